#include "cbop/bundle.hpp"

#include <algorithm>

namespace cbop {

template <class T>
Bundle<T>::Bundle(Measure alpha, Measure beta, std::size_t order, std::size_t depth)
    : alpha_(std::move(alpha)), beta_(std::move(beta)), order_(order), depth_(std::max(depth, order + 2)) {
  if (order < 2) fail(ErrorKind::OrderUnderflow, "bundle order must be at least 2");
  if (alpha_.orientation() < 0 || beta_.orientation() < 0)
    fail(ErrorKind::Input, "bundle measures must be given on the positive axis");
  I_ = bimoment::compute_bimoments(alpha_, beta_, bimoment::Kernel<T>::cauchy(), depth_, depth_);
  am_ = alpha_.moments(static_cast<int>(depth_));
  bm_ = beta_.moments(static_cast<int>(depth_));
  family_ = bop::build_family(I_, order_);
  avg_ = bop::averages(family_, am_, bm_);
  rec_ = recurrence::build_recurrence(family_, avg_, I_);
  hatted_ = recurrence::build_hatted(family_, rec_);
  for (std::size_t k = 0; k < order_; ++k) p_one_.push_back(bop::pairing(I_, family_.p[k], Poly<T>{T(1)}));
}

template class Bundle<Rational>;
template class Bundle<Real>;

}  // namespace cbop
