#pragma once

#include "whid/allocation.hpp"
#include "whid/bla.hpp"
#include "whid/brute_force.hpp"
#include "whid/errors.hpp"
#include "whid/filter_design.hpp"
#include "whid/filtering.hpp"
#include "whid/ga.hpp"
#include "whid/io.hpp"
#include "whid/model.hpp"
#include "whid/monte_carlo.hpp"
#include "whid/rng.hpp"
#include "whid/signal.hpp"
#include "whid/transfer_function.hpp"
#include "whid/version.hpp"
