#ifndef SG_SG_HPP
#define SG_SG_HPP

#include "asymptotics.hpp"
#include "bc.hpp"
#include "common.hpp"
#include "diagnostics.hpp"
#include "field.hpp"
#include "grid.hpp"
#include "interp.hpp"
#include "io.hpp"
#include "jost.hpp"
#include "pde.hpp"
#include "quadrature.hpp"
#include "reflectionless.hpp"
#include "special.hpp"
#include "spectrum.hpp"
#include "theta.hpp"

#endif
