#pragma once

#include "greedymine/analytics.hpp"
#include "greedymine/core_model.hpp"
#include "greedymine/errors.hpp"
#include "greedymine/experiments.hpp"
#include "greedymine/monte_carlo.hpp"
#include "greedymine/oracle.hpp"
#include "greedymine/params.hpp"
#include "greedymine/serialization.hpp"
