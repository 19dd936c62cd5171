#pragma once

#include "ophc/core.hpp"
#include "ophc/cuts.hpp"
#include "ophc/metrics.hpp"
#include "ophc/objective.hpp"
#include "ophc/pareto.hpp"
#include "ophc/poset.hpp"
#include "ophc/solvers.hpp"
#include "ophc/synth.hpp"
#include "ophc/tree.hpp"
