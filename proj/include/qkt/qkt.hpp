// qkt.hpp - umbrella header
#pragma once

#include "qkt/classical_map.hpp"
#include "qkt/coarse_graining.hpp"
#include "qkt/diagnostics.hpp"
#include "qkt/ensemble.hpp"
#include "qkt/entropy.hpp"
#include "qkt/errors.hpp"
#include "qkt/experiments.hpp"
#include "qkt/kicked_top.hpp"
#include "qkt/rng.hpp"
#include "qkt/spin_algebra.hpp"
#include "qkt/table.hpp"
#include "qkt/types.hpp"
#include "qkt/version.hpp"
