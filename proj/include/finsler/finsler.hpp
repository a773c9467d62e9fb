#ifndef FINSLER_FINSLER_HPP
#define FINSLER_FINSLER_HPP

// Umbrella header: the whole library is header-only.

#include "finsler/area.hpp"
#include "finsler/csv.hpp"
#include "finsler/curve.hpp"
#include "finsler/errors.hpp"
#include "finsler/metric.hpp"
#include "finsler/optimizer.hpp"
#include "finsler/quadrature.hpp"
#include "finsler/rng.hpp"
#include "finsler/svg.hpp"
#include "finsler/variational.hpp"
#include "finsler/vec2.hpp"

#endif // FINSLER_FINSLER_HPP
