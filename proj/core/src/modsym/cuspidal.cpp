#include "nscurve/modsym/cuspidal.hpp"

#include "nscurve/error.hpp"
#include "nscurve/modsym/cache.hpp"
#include "nscurve/modsym/linalg.hpp"
#include "nscurve/modsym/space.hpp"

namespace nscurve::modsym {

mpz_class cuspidal_class_order(std::uint32_t p) {
  const ManinSymbolSpace space(p);
  // T_2 acts on cusp forms with eigenvalues of size < 3, so ker(T_2 - 3) is the Eisenstein line
  const auto eis = exact_kernel(cached_hecke_operator(space, 2).shift(-3));
  if (eis.size() != 1) throw CrossCheckError("cuspidal_class_order: Eisenstein eigenspace is not a line");
  const RationalVector& w = eis.front();
  const std::uint32_t cusp = space.cusp_generator();
  if (w[cusp] == 0) throw CrossCheckError("cuspidal_class_order: Eisenstein vector has no boundary");
  // {0, oo} minus its Eisenstein part lies in the rational cuspidal space
  const mpq_class scale = 1 / w[cusp];
  mpz_class order = 1;
  for (std::uint32_t i = 0; i < w.size(); ++i) {
    mpq_class c = (i == cusp ? 1 : 0) - scale * w[i];
    c.canonicalize();
    mpz_lcm(order.get_mpz_t(), order.get_mpz_t(), c.get_den_mpz_t());
  }
  return order;
}

}  // namespace nscurve::modsym
