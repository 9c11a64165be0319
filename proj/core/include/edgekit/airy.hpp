#pragma once

namespace edgekit {

/// Supported argument range of airy_ai / airy_ai_prime.
inline constexpr double kAiryMin = -15.0;
inline constexpr double kAiryMax = 15.0;

/// Airy function Ai(s) on [-15, 15]. Maclaurin series carried in 50-digit
/// arithmetic below s = 8, the large-argument expansion above.
/// Throws std::domain_error outside the supported range.
double airy_ai(double s);

/// Derivative Ai'(s), same method and range.
double airy_ai_prime(double s);

} // namespace edgekit
