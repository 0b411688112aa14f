#pragma once

#include "cbandit/action.hpp"
#include "cbandit/algorithms.hpp"
#include "cbandit/bandit_core.hpp"
#include "cbandit/bounds.hpp"
#include "cbandit/cli.hpp"
#include "cbandit/combinatorics.hpp"
#include "cbandit/harness.hpp"
#include "cbandit/random.hpp"
#include "cbandit/scm.hpp"
#include "cbandit/scm_io.hpp"
