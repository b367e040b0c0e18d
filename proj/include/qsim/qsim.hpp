// Umbrella header.

#pragma once

#include "qsim/algorithms.hpp"
#include "qsim/circuit.hpp"
#include "qsim/gf2.hpp"
#include "qsim/linalg.hpp"
#include "qsim/number_theory.hpp"
#include "qsim/oracles.hpp"
#include "qsim/qft.hpp"
#include "qsim/serial.hpp"
#include "qsim/sim.hpp"
