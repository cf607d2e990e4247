#pragma once

#include "hardy/basis.hpp"
#include "hardy/diagnostics.hpp"
#include "hardy/errors.hpp"
#include "hardy/operators.hpp"
#include "hardy/oracle.hpp"
#include "hardy/phi.hpp"
#include "hardy/sampling.hpp"
#include "hardy/scalar.hpp"
#include "hardy/symbols.hpp"
