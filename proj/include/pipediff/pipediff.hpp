#pragma once

#include "pipediff/error.hpp"
#include "pipediff/kinematics.hpp"
#include "pipediff/pipe_geometry.hpp"
#include "pipediff/report.hpp"
#include "pipediff/robot_model.hpp"
#include "pipediff/scenario.hpp"
#include "pipediff/simulator.hpp"
#include "pipediff/transmission.hpp"
