#pragma once

#include "stateop/errors.hpp"
#include "stateop/experiment.hpp"
#include "stateop/grover.hpp"
#include "stateop/oracles.hpp"
#include "stateop/reflect.hpp"
#include "stateop/report_io.hpp"
#include "stateop/statevec.hpp"
#include "stateop/trace.hpp"
