#pragma once

#include "robustcs/common.hpp"
#include "robustcs/utility.hpp"
#include "robustcs/core.hpp"
#include "robustcs/steepening.hpp"
#include "robustcs/lottery.hpp"
#include "robustcs/relevance.hpp"
#include "robustcs/oracle.hpp"
#include "robustcs/genprefs.hpp"
#include "robustcs/apps.hpp"
#include "robustcs/region.hpp"
#include "robustcs/io.hpp"
#include "robustcs/svg.hpp"
