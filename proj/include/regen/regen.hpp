#ifndef REGEN_REGEN_HPP_
#define REGEN_REGEN_HPP_

#include "regen/compensator.hpp"
#include "regen/config.hpp"
#include "regen/error.hpp"
#include "regen/experiment.hpp"
#include "regen/levy_model.hpp"
#include "regen/limit_laws.hpp"
#include "regen/norm_constants.hpp"
#include "regen/numeric.hpp"
#include "regen/occupancy.hpp"
#include "regen/oracle.hpp"
#include "regen/parallel.hpp"
#include "regen/pathsim.hpp"
#include "regen/rng.hpp"
#include "regen/suite.hpp"

#endif  // REGEN_REGEN_HPP_
