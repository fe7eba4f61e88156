#pragma once

// Umbrella for the dependency-free core. The JSON layer (report.hpp) and
// the command-line front end (cli_app.hpp) are not included here because
// they additionally need json.hpp and CLI11.hpp on the include path.

#include "city.hpp"
#include "dynamics.hpp"
#include "equilibrium.hpp"
#include "payoff.hpp"
#include "rational.hpp"
#include "synthesis.hpp"
