#pragma once

#include "cylradon/checks.hpp"
#include "cylradon/chebyshev.hpp"
#include "cylradon/dual.hpp"
#include "cylradon/errors.hpp"
#include "cylradon/field.hpp"
#include "cylradon/forward.hpp"
#include "cylradon/fourier.hpp"
#include "cylradon/fractional.hpp"
#include "cylradon/geometry.hpp"
#include "cylradon/inversion.hpp"
#include "cylradon/nullspace.hpp"
#include "cylradon/phantoms.hpp"
#include "cylradon/profile.hpp"
#include "cylradon/quadrature.hpp"
#include "cylradon/version.hpp"
