#pragma once

namespace flownet {

/// Principal branch W0 of the Lambert W function, x >= -1/e.
///
/// Halley iteration on w e^w = x (at most 100 steps, tolerance 1e-14) from a
/// branch-point series guess near -1/e, a Taylor guess near 0 and a log
/// asymptote for large x. Arguments within 1e-15 below -1/e snap to the
/// branch point; anything further below throws ErrorCode::DomainError.
double lambert_w0(double x);

}  // namespace flownet
