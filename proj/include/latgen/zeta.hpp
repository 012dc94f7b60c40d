#pragma once

namespace latgen {

// Riemann zeta for real s > 1, accurate to roughly machine precision over the
// range used here (s up to a few hundred, and arbitrarily close to 1 from
// above).  Throws std::domain_error for s <= 1.
double riemann_zeta(double s);

}  // namespace latgen
