#include "qnet/bigint.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace qnet {

Real ratio_to_real(const BigInt& num, const BigInt& den) {
  const boost::multiprecision::cpp_rational ratio(num, den);
  return ratio.convert_to<Real>();
}

}  // namespace qnet
