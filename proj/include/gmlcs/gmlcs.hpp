#pragma once

#include "gmlcs/errors.hpp"
#include "gmlcs/series.hpp"
#include "gmlcs/kcore.hpp"
#include "gmlcs/quadrature.hpp"
#include "gmlcs/mlfunc.hpp"
#include "gmlcs/special.hpp"
#include "gmlcs/coherent.hpp"
#include "gmlcs/measure.hpp"
#include "gmlcs/thermal.hpp"
#include "gmlcs/continuum.hpp"
#include "gmlcs/output.hpp"
