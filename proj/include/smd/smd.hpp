#pragma once

#include "smd/assembly.hpp"
#include "smd/config.hpp"
#include "smd/error.hpp"
#include "smd/kinematics.hpp"
#include "smd/motion.hpp"
#include "smd/motion_io.hpp"
#include "smd/parse.hpp"
#include "smd/prompting.hpp"
#include "smd/skeleton.hpp"
#include "smd/tempseg.hpp"
#include "smd/trajectory.hpp"
