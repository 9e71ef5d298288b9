#include "polsim/oracle.hpp"

#include <algorithm>
#include <random>
#include <utility>

namespace polsim::oracle {

std::string Momentum::to_string() const {
  if (a == 0 && b == 0) return "0";
  std::string s;
  auto piece = [&](int coef, const char* name) {
    if (coef == 0) return;
    if (!s.empty()) s += coef > 0 ? "+" : "-";
    else if (coef < 0) s += "-";
    int mag = std::abs(coef);
    if (mag != 1) s += std::to_string(mag);
    s += name;
  };
  piece(a, "q");
  piece(b, "q'");
  return s;
}

std::string Op::to_string() const {
  switch (kind) {
    case Kind::create:
      return "b+[" + p.to_string() + "]";
    case Kind::annihilate:
      return "b[" + p.to_string() + "]";
    case Kind::deviation:
      return "D[" + p.to_string() + "," + pp.to_string() + "]";
  }
  return "?";
}

std::string to_string(const OperatorString& s) {
  std::string out;
  for (const Op& op : s) {
    if (!out.empty()) out += " ";
    out += op.to_string();
  }
  return out.empty() ? "1" : out;
}

void SymbolicSum::add(OperatorString s, RationalPoly coeff) {
  if (coeff.is_zero()) return;
  auto it = terms_.find(s);
  if (it == terms_.end()) {
    terms_.emplace(std::move(s), std::move(coeff));
  } else {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

std::string SymbolicSum::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [s, c] : terms_) {
    if (!out.empty()) out += "  +  ";
    out += "(" + c.to_string() + ") " + oracle::to_string(s);
  }
  return out;
}

namespace {

bool is_annihilator_class(const Op& op) {
  return op.kind != Op::Kind::create;
}

// Positions i with an annihilation or D immediately left of a creation.
void find_violations(const OperatorString& s, std::vector<std::size_t>& out) {
  out.clear();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (is_annihilator_class(s[i]) && s[i + 1].kind == Op::Kind::create)
      out.push_back(i);
  }
}

// Canonical representative of a normal-ordered string: creations (which
// commute) sorted at the front; within the tail, maximal runs of
// consecutive annihilations (which also commute) sorted, with D symbols
// left in place since the algebra fixes no commutator among them.
void canonicalize(OperatorString& s) {
  auto tail = std::find_if(s.begin(), s.end(), is_annihilator_class);
  std::sort(s.begin(), tail);
  auto run_begin = tail;
  for (auto it = tail;; ++it) {
    if (it == s.end() || it->kind == Op::Kind::deviation) {
      std::sort(run_begin, it);
      if (it == s.end()) break;
      run_begin = it + 1;
    }
  }
}

RationalPoly poly_one() { return RationalPoly::one(); }

RationalPoly poly_minus_one() {
  RationalPoly p(BigRational(-1));
  return p;
}

// (2/N) as a polynomial in x = 1/N.
RationalPoly poly_two_over_N() {
  RationalPoly p(BigRational(2));
  p.shift_up(1);
  return p;
}

}  // namespace

namespace {

// Memoized recursive rewriting. Each rewrite strictly lowers the number of
// (annihilator-left-of-creation) inversions, so recursion terminates; the
// memo collapses the exponentially many rewrite paths that meet on the
// same intermediate string.
class Rewriter {
 public:
  explicit Rewriter(const OracleOptions& opt)
      : opt_(opt), rng_(opt.seed) {}

  const SymbolicSum& run(const OperatorString& s) {
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    if (++processed_ > opt_.max_terms)
      throw OracleLimitError(
          "normal ordering exceeded the term budget of " +
          std::to_string(opt_.max_terms));

    SymbolicSum out;
    find_violations(s, violations_);
    if (violations_.empty()) {
      OperatorString canon = s;
      canonicalize(canon);
      out.add(std::move(canon), poly_one());
      return memo_.emplace(s, std::move(out)).first->second;
    }
    std::size_t i;
    switch (opt_.strategy) {
      case RewriteStrategy::leftmost:
        i = violations_.front();
        break;
      case RewriteStrategy::rightmost:
        i = violations_.back();
        break;
      case RewriteStrategy::seeded_random:
      default:
        i = violations_[rng_() % violations_.size()];
        break;
    }

    const Op left = s[i];
    const Op right = s[i + 1];
    auto accumulate = [&](const OperatorString& child,
                          const RationalPoly& coeff) {
      const SymbolicSum& sub = run(child);
      for (const auto& [term, c] : sub.terms()) out.add(term, c * coeff);
    };

    if (left.kind == Op::Kind::annihilate) {
      // b_p b+_p' = delta_{p,p'} - D_{p,p'} + b+_p' b_p
      if (left.p == right.p) {
        OperatorString contracted;
        contracted.reserve(s.size() - 2);
        contracted.insert(contracted.end(), s.begin(), s.begin() + i);
        contracted.insert(contracted.end(), s.begin() + i + 2, s.end());
        accumulate(contracted, poly_one());
      }
      OperatorString dev = s;
      dev[i] = Op::deviation(left.p, right.p);
      dev.erase(dev.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      accumulate(dev, poly_minus_one());

      OperatorString swapped = s;
      std::swap(swapped[i], swapped[i + 1]);
      accumulate(swapped, poly_one());
    } else {
      // D_{p,pp} b+_p'' = (2/N) b+_{p''+pp-p} + b+_p'' D_{p,pp}
      OperatorString exchanged = s;
      exchanged[i] = Op::create(right.p + left.pp - left.p);
      exchanged.erase(exchanged.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      accumulate(exchanged, poly_two_over_N());

      OperatorString swapped = s;
      std::swap(swapped[i], swapped[i + 1]);
      accumulate(swapped, poly_one());
    }
    return memo_.emplace(s, std::move(out)).first->second;
  }

 private:
  const OracleOptions& opt_;
  std::mt19937_64 rng_;
  std::map<OperatorString, SymbolicSum> memo_;
  std::vector<std::size_t> violations_;
  std::size_t processed_ = 0;
};

}  // namespace

SymbolicSum normal_order(const OperatorString& input,
                         const OracleOptions& opt) {
  if (input.size() > opt.max_input_ops)
    throw OracleLimitError("operator string longer than the configured " +
                           std::to_string(opt.max_input_ops) + " symbols");
  Rewriter rewriter(opt);
  return rewriter.run(input);
}

namespace {

// Vacuum-targeted variant of the rewriting: only the fully contracted term
// survives <F|...|F>, so any string starting with a creation (kills <F| on
// the left) or ending with an annihilator or D (kills |F> on the right)
// contributes zero and its whole rewrite subtree can be dropped. Rewrites
// never dislodge a leading creation or a trailing annihilator, so the
// pruning is sound.
class VevRewriter {
 public:
  explicit VevRewriter(const OracleOptions& opt) : opt_(opt) {}

  RationalPoly run(const OperatorString& s) {
    if (s.empty()) return RationalPoly::one();
    if (s.front().kind == Op::Kind::create) return {};
    if (is_annihilator_class(s.back())) return {};
    auto it = memo_.find(s);
    if (it != memo_.end()) return it->second;
    if (++processed_ > opt_.max_terms)
      throw OracleLimitError(
          "vacuum expectation exceeded the term budget of " +
          std::to_string(opt_.max_terms));

    // Leading symbol is an annihilator or D and a creation exists to its
    // right, so the leftmost violation always exists here.
    std::size_t i = 0;
    while (!(is_annihilator_class(s[i]) &&
             s[i + 1].kind == Op::Kind::create))
      ++i;

    RationalPoly out;
    const Op left = s[i];
    const Op right = s[i + 1];
    if (left.kind == Op::Kind::annihilate) {
      if (left.p == right.p) {
        OperatorString contracted;
        contracted.reserve(s.size() - 2);
        contracted.insert(contracted.end(), s.begin(), s.begin() + i);
        contracted.insert(contracted.end(), s.begin() + i + 2, s.end());
        out += run(contracted);
      }
      OperatorString dev = s;
      dev[i] = Op::deviation(left.p, right.p);
      dev.erase(dev.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      RationalPoly d = run(dev);
      d.scale(BigRational(-1));
      out += d;

      OperatorString swapped = s;
      std::swap(swapped[i], swapped[i + 1]);
      out += run(swapped);
    } else {
      OperatorString exchanged = s;
      exchanged[i] = Op::create(right.p + left.pp - left.p);
      exchanged.erase(exchanged.begin() + static_cast<std::ptrdiff_t>(i) + 1);
      RationalPoly e = run(exchanged);
      e *= poly_two_over_N();
      out += e;

      OperatorString swapped = s;
      std::swap(swapped[i], swapped[i + 1]);
      out += run(swapped);
    }
    return memo_.emplace(s, std::move(out)).first->second;
  }

 private:
  const OracleOptions& opt_;
  std::map<OperatorString, RationalPoly> memo_;
  std::size_t processed_ = 0;
};

}  // namespace

RationalPoly vev_poly(const OperatorString& s, const OracleOptions& opt) {
  if (s.size() > opt.max_input_ops)
    throw OracleLimitError("operator string longer than the configured " +
                           std::to_string(opt.max_input_ops) + " symbols");
  VevRewriter rewriter(opt);
  return rewriter.run(s);
}

BigRational vev(const OperatorString& s, long N, const OracleOptions& opt) {
  return vev_poly(s, opt).evaluate_at_inverse(BigInt(N));
}

Momentum net_momentum(const OperatorString& s) {
  Momentum total;
  for (const Op& op : s) {
    switch (op.kind) {
      case Op::Kind::create:
        total = total + op.p;
        break;
      case Op::Kind::annihilate:
        total = total - op.p;
        break;
      case Op::Kind::deviation:
        total = total + (op.pp - op.p);
        break;
    }
  }
  return total;
}

RationalPoly k_oracle_poly(int n, int m, int s, int r,
                           const OracleOptions& opt) {
  if (n < 0 || m < 0 || s < -1 || r < -1)
    throw std::invalid_argument("k_oracle: bad indices");
  if (n + m != s + r + 1) return {};
  if (s == -1) return k_oracle_poly(m, n, r, s, opt);  // swap symmetry
  if (r == -1) {
    if (m != 0 || s != n) return {};
    if (n == 0) return RationalPoly::one();
    return k_oracle_poly(n, 0, n - 1, 0, opt);
  }
  OperatorString str;
  str.reserve(static_cast<std::size_t>(n + m + s + r + 1));
  for (int i = 0; i < n; ++i) str.push_back(Op::annihilate(kQ));
  for (int i = 0; i < m; ++i) str.push_back(Op::annihilate(kQPrime));
  for (int i = 0; i < s; ++i) str.push_back(Op::create(kQ));
  for (int i = 0; i < r; ++i) str.push_back(Op::create(kQPrime));
  Momentum big_q{n - s, m - r};
  str.push_back(Op::create(big_q));

  RationalPoly poly = vev_poly(str, opt);
  BigRational norm(BigInt(1), BigInt::factorial(static_cast<unsigned>(n)) *
                                  BigInt::factorial(static_cast<unsigned>(m)));
  poly.scale(norm);
  return poly;
}

BigRational k_oracle(int n, int m, int s, int r, long N,
                     const OracleOptions& opt) {
  return k_oracle_poly(n, m, s, r, opt).evaluate_at_inverse(BigInt(N));
}

}  // namespace polsim::oracle
