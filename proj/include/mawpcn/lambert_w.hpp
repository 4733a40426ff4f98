#ifndef MAWPCN_LAMBERT_W_HPP
#define MAWPCN_LAMBERT_W_HPP

namespace mawpcn {

/// Principal branch W0 on [-1/e, inf). Arguments up to 1e-15 below -1/e are
/// treated as -1/e; anything lower throws std::domain_error.
double lambert_w0(double x);

/// W0(-1/e + delta) for delta >= 0, without forming -1/e + delta. Accurate
/// near the branch point where the sum would cancel.
double lambert_w0_branch_offset(double delta);

}  // namespace mawpcn

#endif  // MAWPCN_LAMBERT_W_HPP
