#pragma once

#include "opfree/common.hpp"
#include "opfree/nc_core.hpp"
#include "opfree/symalg.hpp"
#include "opfree/endop.hpp"
#include "opfree/coas.hpp"
#include "opfree/cumulants.hpp"
#include "opfree/twist.hpp"
