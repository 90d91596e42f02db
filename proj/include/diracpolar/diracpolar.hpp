#pragma once

// Umbrella header: the polar form of Dirac fields, their tensorial
// connections, Lie derivatives along Killing vector fields, polar Dirac
// dynamics, and the spherical-symmetry no-go certificate.

#include "diracpolar/clifford.hpp"
#include "diracpolar/dynamics.hpp"
#include "diracpolar/errors.hpp"
#include "diracpolar/expr.hpp"
#include "diracpolar/geometry.hpp"
#include "diracpolar/lie.hpp"
#include "diracpolar/linalg.hpp"
#include "diracpolar/observables.hpp"
#include "diracpolar/polar_field.hpp"
#include "diracpolar/polar_form.hpp"
#include "diracpolar/report.hpp"
#include "diracpolar/scenario.hpp"
#include "diracpolar/spherical.hpp"
#include "diracpolar/tensorial.hpp"
#include "diracpolar/verify.hpp"
