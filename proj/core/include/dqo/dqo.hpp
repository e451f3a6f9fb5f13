#pragma once

// Umbrella header for the whole library.

#include "dqo/bath.hpp"
#include "dqo/config.hpp"
#include "dqo/coupling.hpp"
#include "dqo/dynamics.hpp"
#include "dqo/error.hpp"
#include "dqo/exchange.hpp"
#include "dqo/geometry.hpp"
#include "dqo/kernel.hpp"
#include "dqo/oracle.hpp"
#include "dqo/rates.hpp"
#include "dqo/thermal.hpp"
#include "dqo/trajectory.hpp"
