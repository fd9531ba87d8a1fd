#include "qcverify/lie_frame.hpp"

#include <bit>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qcv {

void LieFrame::set_d_basis(int k, const KForm& f) {
  if (f.dim() != dim_ || f.degree() != 2)
    throw std::invalid_argument("LieFrame: de^k must be a 2-form on the frame");
  if (!f.exact()) throw std::invalid_argument("LieFrame: structure constants must be exact");
  d1_[k - 1] = f;
}

Rational LieFrame::c(int k, int i, int j) const {
  if (i == j) return 0;
  Scalar q = (i < j) ? d1_[k - 1].coeff(mask_of({i, j})) : d1_[k - 1].coeff(mask_of({j, i}));
  Rational r = -q.rational();
  return (i < j) ? r : Rational(-r);
}

std::vector<Rational> LieFrame::bracket(int i, int j) const {
  std::vector<Rational> v(dim_, Rational(0));
  for (int k = 1; k <= dim_; ++k) v[k - 1] = c(k, i, j);
  return v;
}

KForm LieFrame::d(const KForm& a) const {
  if (a.dim() != dim_) throw std::invalid_argument("LieFrame::d: dimension mismatch");
  KForm r(dim_, a.degree() + 1);
  if (a.degree() >= dim_) return r;
  for (auto& [m, coef] : a.terms()) {
    // d(e^{i1..ik}) = sum_m (-1)^{m-1} e^{i1..^im..ik} ∧ de^{im}
    IndexMask rest = m;
    int pos = 0;
    while (rest) {
      int bit = std::countr_zero(rest);
      rest &= rest - 1;
      IndexMask others = m & ~(IndexMask(1) << bit);
      KForm partial(dim_, mask_degree(others));
      Scalar sgn_coef = (pos & 1) ? -coef : coef;
      partial.set(others, sgn_coef);
      r = r + wedge(partial, d1_[bit]);
      ++pos;
    }
  }
  return r;
}

std::vector<int> LieFrame::derived_series_dims(int depth) const {
  // Span of brackets of the previous term, computed exactly.
  std::vector<std::vector<Rational>> gen;
  for (int i = 1; i <= dim_; ++i) {
    std::vector<Rational> v(dim_, Rational(0));
    v[i - 1] = 1;
    gen.push_back(v);
  }
  std::vector<int> dims;
  for (int step = 0; step < depth; ++step) {
    std::vector<std::vector<Rational>> br;
    for (size_t x = 0; x < gen.size(); ++x)
      for (size_t y = x + 1; y < gen.size(); ++y) {
        std::vector<Rational> v(dim_, Rational(0));
        for (int i = 1; i <= dim_; ++i)
          for (int j = 1; j <= dim_; ++j) {
            Rational cij = gen[x][i - 1] * gen[y][j - 1];
            if (sgn(cij) == 0) continue;
            for (int k = 1; k <= dim_; ++k) v[k - 1] += cij * c(k, i, j);
          }
        br.push_back(std::move(v));
      }
    MatQ m(int(br.size()), dim_);
    for (size_t r = 0; r < br.size(); ++r)
      for (int j = 0; j < dim_; ++j) m.at(int(r), j) = br[r][j];
    int rk = rank_exact(m);
    dims.push_back(rk);
    // reduce gen to a basis of the span for the next step
    std::vector<std::vector<Rational>> next;
    MatQ acc(rk == 0 ? 1 : rk, dim_);
    int have = 0;
    for (auto& v : br) {
      if (have == rk) break;
      MatQ trial(have + 1, dim_);
      for (int r = 0; r < have; ++r)
        for (int j = 0; j < dim_; ++j) trial.at(r, j) = acc.at(r, j);
      for (int j = 0; j < dim_; ++j) trial.at(have, j) = v[j];
      if (rank_exact(trial) > have) {
        for (int j = 0; j < dim_; ++j) acc.at(have, j) = v[j];
        next.push_back(v);
        ++have;
      }
    }
    gen = std::move(next);
    if (gen.empty()) {
      while (int(dims.size()) < depth) dims.push_back(0);
      break;
    }
  }
  return dims;
}

JacobiReport jacobi_check(const LieFrame& L) {
  JacobiReport rep;
  rep.algebra = L.name();
  for (int k = 1; k <= L.dim(); ++k) {
    KForm dd = L.d(L.d_basis(k));
    if (!dd.is_zero()) {
      rep.pass = false;
      rep.failures.push_back({k, dd});
    }
  }
  return rep;
}

namespace {

void skip_ws(const std::string& s, size_t& p) {
  while (p < s.size() && std::isspace((unsigned char)s[p])) ++p;
}

// number: optional sign, digits, optional /digits
Rational parse_coef(const std::string& s, size_t& p, bool* found) {
  skip_ws(s, p);
  size_t start = p;
  int sign = 1;
  while (p < s.size() && (s[p] == '+' || s[p] == '-')) {
    if (s[p] == '-') sign = -sign;
    ++p;
    skip_ws(s, p);
  }
  std::string num;
  while (p < s.size() && std::isdigit((unsigned char)s[p])) num += s[p++];
  std::string den;
  if (p < s.size() && s[p] == '/') {
    ++p;
    while (p < s.size() && std::isdigit((unsigned char)s[p])) den += s[p++];
    if (den.empty()) throw std::invalid_argument("algebra file: malformed fraction");
  }
  *found = (p != start);
  Rational q = num.empty() ? Rational(1) : rat_parse(num + (den.empty() ? "" : "/" + den));
  if (sign < 0) q = -q;
  return q;
}

}  // namespace

LieFrame parse_algebra_text(const std::string& text, const std::string& name) {
  struct Term {
    int k;
    Rational q;
    int i, j;
  };
  std::vector<Term> terms;
  std::vector<int> closed;
  int dim = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    size_t p = 0;
    skip_ws(line, p);
    if (p >= line.size()) continue;
    if (line.compare(p, 3, "dim") == 0) {
      dim = std::max(dim, std::stoi(line.substr(p + 3)));
      continue;
    }
    // "de<k> = ..." or "d e<k> = ..."
    if (line[p] != 'd') throw std::invalid_argument("algebra file: expected 'de<k> = ...'");
    ++p;
    skip_ws(line, p);
    if (p < line.size() && line[p] == 'e') ++p;
    size_t q0 = p;
    while (p < line.size() && std::isdigit((unsigned char)line[p])) ++p;
    if (p == q0) throw std::invalid_argument("algebra file: missing basis index");
    int k = std::stoi(line.substr(q0, p - q0));
    dim = std::max(dim, k);
    skip_ws(line, p);
    if (p >= line.size() || line[p] != '=')
      throw std::invalid_argument("algebra file: expected '='");
    ++p;
    skip_ws(line, p);
    if (p < line.size() && line[p] == '0') {
      closed.push_back(k);
      continue;
    }
    while (p < line.size()) {
      bool found = false;
      Rational q = parse_coef(line, p, &found);
      skip_ws(line, p);
      if (p >= line.size()) {
        if (found) throw std::invalid_argument("algebra file: dangling coefficient");
        break;
      }
      if (line[p] != 'e') throw std::invalid_argument("algebra file: expected basis monomial");
      ++p;
      size_t d0 = p;
      while (p < line.size() && std::isdigit((unsigned char)line[p])) ++p;
      std::string digits = line.substr(d0, p - d0);
      int i, j;
      if (digits.size() == 2) {
        i = digits[0] - '0';
        j = digits[1] - '0';
      } else {
        // eI.J for indices beyond 9
        size_t dot = digits.find('.');
        if (dot == std::string::npos)
          throw std::invalid_argument("algebra file: two indices required, e.g. e12 or e10.11");
        i = std::stoi(digits.substr(0, dot));
        j = std::stoi(digits.substr(dot + 1));
      }
      if (i == j) throw std::invalid_argument("algebra file: repeated index in monomial");
      dim = std::max({dim, i, j});
      terms.push_back({k, q, i, j});
      skip_ws(line, p);
    }
  }
  LieFrame L(name, dim);
  std::vector<KForm> dk(dim + 1, KForm(dim, 2));
  for (auto& t : terms) {
    int i = t.i, j = t.j;
    Rational q = t.q;
    if (i > j) {
      std::swap(i, j);
      q = -q;
    }
    dk[t.k].add(mask_of({i, j}), Scalar(q));
  }
  for (int k = 1; k <= dim; ++k) L.set_d_basis(k, dk[k]);
  return L;
}

LieFrame parse_algebra_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open algebra file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  size_t slash = path.find_last_of('/');
  return parse_algebra_text(ss.str(), slash == std::string::npos ? path : path.substr(slash + 1));
}

}  // namespace qcv
