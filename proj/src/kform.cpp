#include "qcverify/kform.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcv {

int mask_degree(IndexMask m) { return std::popcount(m); }

int merge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  // crossings = #{(i,j) : i in a, j in b, i > j}
  int crossings = 0;
  IndexMask bb = b;
  while (bb) {
    int j = std::countr_zero(bb);
    bb &= bb - 1;
    crossings += std::popcount(a >> (j + 1));
  }
  return (crossings & 1) ? -1 : +1;
}

std::string mask_str(IndexMask m) {
  std::string s = "e^{";
  for (int i = 0; i < 32; ++i)
    if (m & (IndexMask(1) << i)) s += std::to_string(i + 1);
  s += "}";
  return s;
}

IndexMask mask_of(std::initializer_list<int> idx) {
  IndexMask m = 0;
  for (int i : idx) m |= IndexMask(1) << (i - 1);
  return m;
}

KForm KForm::basis(int dim, std::initializer_list<int> idx, Scalar coeff) {
  KForm f(dim, int(idx.size()));
  f.set(mask_of(idx), coeff);
  return f;
}

KForm KForm::constant(int dim, Scalar c) {
  KForm f(dim, 0);
  f.set(0, c);
  return f;
}

bool KForm::exact() const {
  for (auto& [m, c] : terms_)
    if (!c.exact()) return false;
  return true;
}

Scalar KForm::coeff(IndexMask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar(0) : it->second;
}

Scalar KForm::coeff(std::initializer_list<int> idx) const { return coeff(mask_of(idx)); }

void KForm::set(IndexMask m, const Scalar& c) {
  if (mask_degree(m) != degree_)
    throw std::invalid_argument("KForm::set: multi-index degree mismatch");
  if (c.is_zero())
    terms_.erase(m);
  else
    terms_[m] = c;
}

void KForm::add(IndexMask m, const Scalar& c) { set(m, coeff(m) + c); }

KForm KForm::operator-() const {
  KForm r(dim_, degree_);
  for (auto& [m, c] : terms_) r.terms_[m] = -c;
  return r;
}

KForm KForm::operator+(const KForm& o) const {
  if (dim_ != o.dim_ || degree_ != o.degree_)
    throw std::invalid_argument("KForm::+: dim/degree mismatch");
  KForm r = *this;
  for (auto& [m, c] : o.terms_) r.add(m, c);
  return r;
}

KForm KForm::operator-(const KForm& o) const { return *this + (-o); }

KForm KForm::operator*(const Scalar& c) const {
  KForm r(dim_, degree_);
  if (c.is_zero()) return r;
  for (auto& [m, x] : terms_) {
    Scalar y = x * c;
    if (!y.is_zero()) r.terms_[m] = y;
  }
  return r;
}

double KForm::max_abs() const {
  double mx = 0;
  for (auto& [m, c] : terms_) mx = std::max(mx, std::fabs(c.value()));
  return mx;
}

bool KForm::eq(const KForm& a, const KForm& b, double tol) {
  if (a.dim_ != b.dim_) return false;
  KForm d = (a.degree_ == b.degree_) ? a - b : KForm();
  if (a.degree_ != b.degree_) return a.is_zero() && b.is_zero();
  if (tol == 0.0 && a.exact() && b.exact()) return d.is_zero();
  return d.max_abs() <= tol;
}

std::string KForm::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")";
    if (m) os << mask_str(m);
  }
  return os.str();
}

KForm wedge(const KForm& a, const KForm& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: frame dimension mismatch");
  KForm r(a.dim(), a.degree() + b.degree());
  if (r.degree() > a.dim()) return r;  // exceeds top degree -> 0
  for (auto& [ma, ca] : a.terms())
    for (auto& [mb, cb] : b.terms()) {
      int s = merge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      r.add(ma | mb, c);
    }
  return r;
}

KForm interior(int v, const KForm& a) {
  if (a.degree() == 0) throw std::domain_error("interior: degree-0 input");
  KForm r(a.dim(), a.degree() - 1);
  IndexMask vb = IndexMask(1) << (v - 1);
  for (auto& [m, c] : a.terms()) {
    if (!(m & vb)) continue;
    int below = std::popcount(m & (vb - 1));
    Scalar s = (below & 1) ? -c : c;
    r.add(m & ~vb, s);
  }
  return r;
}

KForm hodge_star(const KForm& a, const Signature& sig) {
  int n = a.dim();
  if (sig.dim != n) throw std::invalid_argument("hodge_star: signature dimension mismatch");
  IndexMask full = (n == 32) ? ~IndexMask(0) : ((IndexMask(1) << n) - 1);
  KForm r(n, n - a.degree());
  for (auto& [m, c] : a.terms()) {
    IndexMask mc = full & ~m;
    int s = merge_sign(m, mc) * sig.orientation;
    for (int i = 0; i < n; ++i)
      if (m & (IndexMask(1) << i)) s *= sig.diag[i];
    Scalar cc = (s < 0) ? -c : c;
    r.add(mc, cc);
  }
  return r;
}

bool Tensor2::symmetric() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      if (!Scalar::eq(at(i, j), at(j, i), 0.0)) return false;
  return true;
}

bool Tensor2::antisymmetric() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      if (!Scalar::eq(at(i, j), -at(j, i), 0.0)) return false;
  return true;
}

double Tensor4::max_abs() const {
  double mx = 0;
  for (auto& c : a) mx = std::max(mx, std::fabs(c.value()));
  return mx;
}

Tensor4 kn_product(const Tensor2& h, const Tensor2& k) {
  if (h.dim != k.dim) throw std::invalid_argument("kn_product: rank mismatch");
  bool ok = (h.symmetric() && k.symmetric()) || (h.antisymmetric() && k.antisymmetric());
  if (!ok)
    throw std::invalid_argument("kn_product: arguments must be both symmetric or both antisymmetric");
  int n = h.dim;
  Tensor4 r(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        for (int v = 0; v < n; ++v)
          r.at(x, y, z, v) = h.at(x, z) * k.at(y, v) + h.at(y, v) * k.at(x, z) -
                             h.at(y, z) * k.at(x, v) - h.at(x, v) * k.at(y, z);
  return r;
}

}  // namespace qcv
