#ifndef OPTOENT_OPTOENT_HPP
#define OPTOENT_OPTOENT_HPP

#include "optoent/constants.hpp"
#include "optoent/error.hpp"
#include "optoent/params.hpp"
#include "optoent/steady_state.hpp"
#include "optoent/linear_dynamics.hpp"
#include "optoent/lyapunov.hpp"
#include "optoent/entanglement.hpp"
#include "optoent/pipeline.hpp"
#include "optoent/sweep.hpp"
#include "optoent/critical_temperature.hpp"
#include "optoent/plot.hpp"
#include "optoent/config.hpp"

#endif  // OPTOENT_OPTOENT_HPP
