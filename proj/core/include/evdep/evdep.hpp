#pragma once

#include "evdep/data.hpp"
#include "evdep/empirical_copula.hpp"
#include "evdep/error.hpp"
#include "evdep/kendall_tests.hpp"
#include "evdep/maxstab.hpp"
#include "evdep/pickands.hpp"
#include "evdep/power_study.hpp"
#include "evdep/ranks.hpp"
#include "evdep/registry.hpp"
#include "evdep/report.hpp"
#include "evdep/simulation.hpp"
#include "evdep/spline.hpp"
