#pragma once

#include "ramlift/bs_group.hpp"
#include "ramlift/classifier.hpp"
#include "ramlift/cover.hpp"
#include "ramlift/json_io.hpp"
#include "ramlift/lift.hpp"
#include "ramlift/signature.hpp"
#include "ramlift/verify.hpp"
