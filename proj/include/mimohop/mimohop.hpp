#pragma once

#include "mimohop/csv.hpp"
#include "mimohop/errors.hpp"
#include "mimohop/line_network.hpp"
#include "mimohop/outage.hpp"
#include "mimohop/ppp_sim.hpp"
#include "mimohop/random.hpp"
#include "mimohop/random_network.hpp"
#include "mimohop/special_fn.hpp"
#include "mimohop/theorem_lab.hpp"
