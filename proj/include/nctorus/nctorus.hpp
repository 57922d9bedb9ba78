#pragma once

#include "nctorus/numbers.hpp"
#include "nctorus/cyclotomic.hpp"
#include "nctorus/deformation.hpp"
#include "nctorus/word.hpp"
#include "nctorus/increasing_map.hpp"
#include "nctorus/element.hpp"
#include "nctorus/moments.hpp"
#include "nctorus/states.hpp"
#include "nctorus/random.hpp"
#include "nctorus/symmetry.hpp"
#include "nctorus/oracle.hpp"
#include "nctorus/expression.hpp"
#include "nctorus/state_io.hpp"
#include "nctorus/cli.hpp"
