#pragma once

// Umbrella header for the quaysim library.

#include "quaysim/berth.hpp"
#include "quaysim/calibration.hpp"
#include "quaysim/crane.hpp"
#include "quaysim/errors.hpp"
#include "quaysim/event_calendar.hpp"
#include "quaysim/kpi.hpp"
#include "quaysim/log_sheet.hpp"
#include "quaysim/plot.hpp"
#include "quaysim/rational.hpp"
#include "quaysim/scenario_config.hpp"
#include "quaysim/sim_time.hpp"
#include "quaysim/simulation.hpp"
#include "quaysim/vessel.hpp"
