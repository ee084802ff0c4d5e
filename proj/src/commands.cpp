#include "cbop/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <json.hpp>
#include <sstream>

#include "cbop/bimoment.hpp"
#include "cbop/bop.hpp"
#include "cbop/bundle.hpp"
#include "cbop/cdkernel.hpp"
#include "cbop/nikishin.hpp"
#include "cbop/recurrence.hpp"
#include "cbop/rhp.hpp"
#include "cbop/zeros.hpp"

namespace cbop::cmd {

using json = nlohmann::ordered_json;
using measure::DiscreteMeasure;

namespace {

// ---- serialization ----

json jv(const Rational& v) { return format_rational(v); }
json jv(Real v) {
  if (!std::isfinite(v)) return nullptr;
  return static_cast<double>(v);
}

template <class T>
json jv(const std::vector<T>& v) {
  json a = json::array();
  for (const T& x : v) a.push_back(jv(x));
  return a;
}

template <class T>
json jv(const Matrix<T>& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jv(m(i, j)));
    a.push_back(row);
  }
  return a;
}

template <class P>
json jv(const rhp::Mat3<P>& m) {
  json a = json::array();
  for (const auto& r : m) {
    json row = json::array();
    for (const P& x : r) row.push_back(jv(x));
    a.push_back(row);
  }
  return a;
}

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void flatten(const json& v, const std::string& path, std::ostringstream& out) {
  if (v.is_object()) {
    for (auto it = v.begin(); it != v.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
  } else if (v.is_array()) {
    for (std::size_t k = 0; k < v.size(); ++k) flatten(v[k], path + "[" + std::to_string(k) + "]", out);
  } else {
    out << csv_cell(path) << "," << csv_cell(v) << "\n";
  }
}

std::string render(const json& doc, Output out) {
  if (out == Output::Json) return doc.dump(2) + "\n";
  std::ostringstream s;
  if (doc.contains("checks")) {
    s << "name,status,residual,detail,elapsed_ms\n";
    for (const json& c : doc["checks"])
      s << csv_cell(c["name"]) << "," << csv_cell(c["status"]) << "," << csv_cell(c["residual"]) << ","
        << csv_cell(c["detail"]) << "," << csv_cell(c["elapsed_ms"]) << "\n";
  } else {
    s << "key,value\n";
    flatten(doc, "", s);
  }
  return s.str();
}

// ---- mode and measures ----

bool exact_mode(const io::ProblemSpec& spec, const Options& opt) {
  if (opt.mode == Mode::Exact) {
    if (!spec.discrete()) fail(ErrorKind::Input, "exact mode requires discrete measures with rational atoms");
    return true;
  }
  if (opt.mode == Mode::Float) return false;
  return spec.discrete();
}

template <class T>
DiscreteMeasure<T> atoms_of(const measure::Measure& m) {
  if constexpr (is_exact_v<T>)
    return io::exact_atoms(m);
  else
    return io::float_atoms(m);
}

template <class T>
const char* mode_name() {
  return is_exact_v<T> ? "exact" : "float";
}

// ---- tolerances ----

constexpr Real kFloatTol = 1e-8L;

template <class T>
Real mag(const T& v) {
  return to_real(T(abs_of(v)));
}

/// Exact mode: zero. Float mode: below kFloatTol relative to `scale`.
template <class T>
bool vanishes(const T& r, Real scale = 1) {
  if constexpr (is_exact_v<T>)
    return is_zero(r);
  else
    return std::isfinite(r) && abs_of(r) <= kFloatTol * std::max<Real>(1, scale);
}

template <class T>
std::string show(const T& v) {
  return format_scalar(v);
}

// Typical size of the terms in the window identities at (w, z).
template <class T>
Real window_scale(const Bundle<T>& b, const T& w, const T& z) {
  if constexpr (is_exact_v<T>) {
    return 1;
  } else {
    Real q = 1, p = 1, op = 1;
    for (int a = 0; a < 3; ++a) {
      for (Real v : b.q_vec(a, w)) q = std::max(q, std::abs(v));
      for (Real v : b.q_vec(a, T(-z))) q = std::max(q, std::abs(v));
      for (Real v : b.p_vec(a, z)) p = std::max(p, std::abs(v));
      for (Real v : b.phat_vec(a, z)) p = std::max(p, std::abs(v));
    }
    op = std::max(op, mag(max_abs(b.rec().Ahat.m)));
    for (Real e : b.rec().eta) op = std::max(op, 1 / std::abs(e));
    return q * p * op * (1 + std::abs(w) + std::abs(z));
  }
}

// Largest single term of a CD-type identity at window n: the partial sums
// (w+z) q_j p_j and the nine products in the boundary block.
template <class T>
Real term_scale(const Bundle<T>& b, int a, int bb, std::size_t n, const T& w, const T& z) {
  if constexpr (is_exact_v<T>) {
    return 1;
  } else {
    auto q = b.q_vec(a, w);
    auto p = b.p_vec(bb, z);
    auto ph = b.phat_vec(bb, z);
    auto qh = b.qhat_vec(a, w);
    Real sum = 0, s = 1;
    for (std::size_t j = 0; j < n; ++j) sum += std::abs(q[j] * p[j]) + std::abs(qh[j] * ph[j]);
    s = std::max(s, (std::abs(w) + std::abs(z)) * sum);
    auto blk = cdkernel::commutator_block(b.rec(), n);
    const Real sv = std::max(std::abs(w), std::abs(z));
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t c = 0; c < 3; ++c) {
        long j = blk.col(c);
        if (j < 0) continue;
        Real e = std::abs(blk.constant[r][c]) + (r == 1 && c == 1 ? std::abs(blk.s_coeff) * sv : 0);
        s = std::max(s, std::abs(q[blk.row(r)]) * e * std::abs(ph[static_cast<std::size_t>(j)]));
      }
    return s;
  }
}

// ---- test points ----

// Deterministic rational candidates of both signs, skipping every atom and
// its reflection.
template <class T>
std::vector<T> test_points(const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta, std::size_t count,
                           bool positive_only = false) {
  std::vector<T> out;
  for (long k = 1; out.size() < count && k < 10000; ++k) {
    long num = (37 * k) % 97 + 1, den = k % 7 + 2;
    Rational r(num, den);
    r.canonicalize();
    if (!positive_only && k % 3 == 0) r = -r;
    T t;
    if constexpr (is_exact_v<T>)
      t = r;
    else
      t = to_real(r);
    if (alpha.is_atom(t) || alpha.is_atom(T(-t)) || beta.is_atom(t) || beta.is_atom(T(-t))) continue;
    if (std::find(out.begin(), out.end(), t) != out.end()) continue;
    out.push_back(t);
  }
  return out;
}

// ---- report plumbing ----

struct CheckOutcome {
  bool pass = false;
  std::string residual;
  std::string detail;
};

class Report {
 public:
  Report(std::string suite, std::string mode, std::size_t order) {
    doc_["suite"] = std::move(suite);
    doc_["mode"] = std::move(mode);
    doc_["order"] = order;
    doc_["status"] = "pass";
    doc_["checks"] = json::array();
  }

  void run(const std::string& name, const std::function<CheckOutcome()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    json c;
    c["name"] = name;
    try {
      CheckOutcome o = f();
      c["status"] = o.pass ? "pass" : "fail";
      c["residual"] = o.residual;
      c["detail"] = o.detail;
      if (!o.pass) failed_ = true;
    } catch (const Error& e) {
      c["status"] = "error";
      c["residual"] = "";
      c["detail"] = std::string(error_kind_name(e.kind())) + ": " + e.what();
      if (e.kind() == ErrorKind::TheoryViolation) theory_ = true;
      failed_ = true;
    }
    c["elapsed_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    doc_["checks"].push_back(c);
  }

  void skip(const std::string& name, const std::string& why) {
    doc_["checks"].push_back({{"name", name}, {"status", "skipped"}, {"residual", ""}, {"detail", why}, {"elapsed_ms", 0}});
  }

  void attach(const std::string& key, json v) { doc_[key] = std::move(v); }

  Result finish(Output out) {
    doc_["status"] = failed_ ? "fail" : "pass";
    Result r;
    r.text = render(doc_, out);
    r.exit_code = theory_ ? 3 : failed_ ? 1 : 0;
    return r;
  }

 private:
  json doc_;
  bool failed_ = false, theory_ = false;
};

template <class T>
struct Worst {
  T value = T(0);
  Real scaled = 0;  // float: value / scale
  bool ok = true;
  std::string where;

  void add(const T& r, Real scale, const std::string& at) {
    if (!vanishes(r, scale)) {
      ok = false;
      if (where.empty()) where = at;
    }
    Real s = mag(r) / std::max<Real>(1, scale);
    if (mag(r) > mag(value)) value = abs_of(r);
    scaled = std::max(scaled, s);
  }

  CheckOutcome outcome(const std::string& what) const {
    CheckOutcome o;
    o.pass = ok;
    o.residual = show(value);
    o.detail = ok ? what : what + "; first failure at " + where;
    return o;
  }
};

// ---- suites ----

template <class T>
void suite_tp(Report& rep, const DiscreteMeasure<T>& alpha, const DiscreteMeasure<T>& beta, std::size_t N,
              std::size_t kmax) {
  auto I = bimoment::compute_bimoments(alpha, beta, bimoment::Kernel<T>::cauchy(), N + 1, N + 1);
  rep.run("tp.consecutive_minors", [&] {
    auto cert = bimoment::check_total_positivity(I.entries.leading(N), kmax);
    CheckOutcome o;
    o.pass = cert.pass;
    o.residual = show(cert.min_minor);
    o.detail = std::to_string(cert.checked) + " minors up to size " + std::to_string(cert.kmax);
    if (cert.violation)
      o.detail += "; violating minor of size " + std::to_string(cert.violation->size) + " at rows " +
                  std::to_string(cert.violation->row) + ".., cols " + std::to_string(cert.violation->col) +
                  ".. with value " + show(cert.violation_value);
    return o;
  });
  rep.run("tp.rank_one_shift", [&] {
    auto R = bimoment::rank_one_shift_residual(I, alpha.moments(int(N + 1)), beta.moments(int(N + 1)), N);
    Worst<T> w;
    w.add(max_abs(R), mag(max_abs(I.entries)), "window");
    return w.outcome("Lambda I + I Lambda^T - alpha beta^T on the " + std::to_string(N) + "x" + std::to_string(N) +
                     " window");
  });
  if constexpr (is_exact_v<T>) {
    if (alpha.size() <= 10 && beta.size() <= 10) {
      rep.run("tp.minors_vs_closed_form", [&] {
        std::size_t top = std::min<std::size_t>(N, 4);
        auto D = leading_principal_minors(I.entries, top);
        Worst<T> w;
        for (std::size_t n = 1; n <= top; ++n)
          w.add(T(D[n - 1] - bimoment::oracle_Dn(alpha, beta, n)), 1, "D_" + std::to_string(n));
        return w.outcome("D_n against the symmetrized Cauchy-Vandermonde sum, n <= " + std::to_string(top));
      });
    }
  }
}

template <class T>
void suite_bop(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  rep.run("bop.biorthogonality", [&] {
    Worst<T> w;
    w.add(bop::biorthogonality_residual(b.family(), b.bimoments()), mag(max_abs(b.bimoments().entries)), "table");
    return w.outcome("<p~_i|q~_j> - h_i delta_ij, i,j < " + std::to_string(N));
  });
  rep.run("bop.determinantal_oracle", [&] {
    Worst<T> w;
    for (std::size_t n = 1; n < std::min<std::size_t>(N, 5); ++n) {
      auto [po, qo] = bop::determinantal_oracle(b.bimoments(), n);
      T d(0);
      for (std::size_t k = 0; k <= n; ++k)
        d += abs_of(T(po[k] - b.family().p[n][k])) + abs_of(T(qo[k] - b.family().q[n][k]));
      w.add(d, 1, "n=" + std::to_string(n));
    }
    return w.outcome("bordered-determinant formulas against the factorization");
  });
}

template <class T>
void suite_recurrence(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  const auto& r = b.rec();
  rep.run("recurrence.operators", [&] {
    auto c = recurrence::operator_checks(r);
    Worst<T> w;
    Real s = mag(max_abs(r.X)) + mag(max_abs(r.Y)) + 1;
    w.add(c.rank_one, s, "X + Y^T - pi eta^T");
    w.add(c.b_plus_at, s, "B + A^T");
    w.add(c.bhat_plus_ahat_t, s, "B^ + A^^T");
    w.add(c.lx_plus_lyt, s, "L X + L Y^T");
    w.add(c.xlhat_plus_ytlhat, s, "X L^ + Y^T L^");
    w.add(c.band_A, s, "A outside [-1,2]");
    w.add(c.band_Ahat, s, "A^ outside [-2,1]");
    w.add(c.band_B, s, "B outside [-2,1]");
    w.add(c.band_Bhat, s, "B^ outside [-1,2]");
    w.add(c.hessenberg, s, "Hessenberg shape");
    return w.outcome("band structure and operator identities on the valid window");
  });
  rep.run("recurrence.rank_one_monic", [&] {
    Worst<T> w;
    w.add(max_abs(recurrence::rank_one_XY_residual(r.X, r.Ymonic, b.family(), b.averages())),
          mag(max_abs(r.X)) + 1, "window");
    return w.outcome("X~ + conjugated Y~^T - pi~ eta~^T / h");
  });
  rep.run("recurrence.four_term", [&] {
    Worst<T> w;
    auto xs = test_points(b.alpha(), b.beta(), 20);
    for (std::size_t n = 1; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < xs.size(); ++k) {
        const T& x = xs[k];
        const T& y = xs[(k + 7) % xs.size()];
        auto [rp, rq] = recurrence::four_term_residual(b.family(), r, n, x, y);
        Real s = 1;
        if constexpr (!is_exact_v<T>) {
          for (const auto& p : b.family().p) s = std::max(s, std::abs(horner(p, x)) * (1 + std::abs(x)));
          for (std::size_t j = 0; j < N; ++j)
            s = std::max(s, std::abs(horner(b.family().q[j], y) / b.family().h[j]) * (1 + std::abs(y)) *
                                std::max<Real>(1, mag(max_abs(r.Y))));
        }
        w.add(rp, s, "p, n=" + std::to_string(n));
        w.add(rq, s, "q, n=" + std::to_string(n));
      }
    return w.outcome("x p = X p and y q = Y q at " + std::to_string(xs.size()) + " points, 1 <= n <= order-2");
  });
  rep.run("recurrence.hatted", [&] {
    auto c = recurrence::verify_hatted(b.hatted(), b.family(), r, b.bimoments(), b.beta_moments());
    Worst<T> w;
    Real s = mag(max_abs(b.bimoments().entries)) + 1;
    w.add(c.qhat_mean, s, "int q^ dbeta");
    w.add(c.biorthogonal, s, "<p^|q^>");
    w.add(c.leading, s, "leading coefficient of q^");
    w.add(c.phat_moments, s, "moments of p^");
    if (!c.degrees_ok) w.add(T(1), 0, "degrees");
    return w.outcome("hatted families");
  });
  rep.run("recurrence.hatted_oracle", [&] {
    Worst<T> w;
    for (std::size_t n = 1; n + 1 < std::min<std::size_t>(N, 5); ++n) {
      auto [qo, po] = recurrence::hatted_determinantal_oracle(b.bimoments(), b.beta_moments(), b.averages(), n);
      T d(0);
      for (std::size_t k = 0; k < qo.size(); ++k) d += abs_of(T(qo[k] - b.hatted().qhat[n][k]));
      for (std::size_t k = 0; k < po.size(); ++k) d += abs_of(T(po[k] - b.hatted().phat[n][k]));
      w.add(d, 1, "n=" + std::to_string(n));
    }
    return w.outcome("bordered-determinant formulas for the hatted families");
  });
  rep.run("recurrence.X_oscillatory", [&] {
    auto c = recurrence::tn_oscillatory_certificate(r.X, std::min<std::size_t>(3, N));
    CheckOutcome o;
    o.pass = c.totally_nonnegative && c.invertible && c.positive_off_diagonals;
    o.residual = show(c.min_minor);
    o.detail = std::to_string(c.checked) + " minors up to size " + std::to_string(c.kmax);
    return o;
  });
}

template <class T>
void suite_zeros(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  for (bop::Side side : {bop::Side::P, bop::Side::Q}) {
    const std::string tag = side == bop::Side::P ? "p" : "q";
    rep.run("zeros." + tag + ".location", [&] {
      CheckOutcome o;
      o.pass = true;
      Real agree = 0;
      std::vector<Real> prev;
      for (std::size_t n = 1; n < N; ++n) {
        auto z = zeros::zeros_of(b, side, n);
        agree = std::max(agree, z.companion_agreement);
        Real span = to_real(T(std::max(b.alpha().hull_max(), b.beta().hull_max())));
        bool simple = n == 1 || z.min_gap > Real(1e-10) * span;
        bool ok = z.real && z.positive && z.in_hull && simple && !z.coincident;
        if constexpr (is_exact_v<T>) ok = ok && z.certified;
        if (n > 1 && !zeros::interlacing_check(z.zeros, prev)) {
          ok = false;
          o.detail += "degree " + std::to_string(n) + " does not interlace; ";
        }
        if (!ok && o.pass) o.detail += "first failure at degree " + std::to_string(n) + "; ";
        o.pass = o.pass && ok;
        prev = z.zeros;
      }
      o.residual = format_real(agree);
      o.detail += "real, positive, simple, inside the hull and interlacing for 1 <= n <= order-1";
      return o;
    });
    rep.run("zeros." + tag + ".charpoly", [&] {
      Worst<T> w;
      auto pts = test_points(b.alpha(), b.beta(), 4);
      for (std::size_t n = 1; n < std::min<std::size_t>(N, 5); ++n)
        for (const T& t : pts) {
          Real s = 1;
          if constexpr (!is_exact_v<T>) s = std::pow(1 + std::abs(t) + mag(max_abs(b.rec().X)), Real(n));
          w.add(zeros::charpoly_identity_residual(b, side, n, t), s, "n=" + std::to_string(n));
        }
      return w.outcome("det(t - truncated recurrence) against the monic polynomial");
    });
  }
}

template <class T>
void suite_cdi(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  auto pts = test_points(b.alpha(), b.beta(), 20);
  rep.run("cdi.block_vs_dense", [&] {
    Worst<T> w;
    for (std::size_t n = 1; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < 3; ++k)
        w.add(cdkernel::block_vs_dense_residual(b.rec(), n, pts[k]),
              (mag(max_abs(b.rec().Y)) + mag(pts[k])) * mag(max_abs(b.rec().Lhat)), "n=" + std::to_string(n));
    return w.outcome("4-entry commutator block against [(s + Y^T) L^, Pi]");
  });
  rep.run("cdi.plain", [&] {
    Worst<T> w;
    for (std::size_t n = 1; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < 10; ++k) {
        const T& x = pts[k];
        const T& y = pts[k + 10];
        w.add(cdkernel::cd_residual_plain(b, n, x, y), term_scale(b, 0, 0, n, y, x), "n=" + std::to_string(n));
      }
    return w.outcome("(x+y) sum q_j(y) p_j(x) against the boundary block at 10 point pairs");
  });
  rep.run("cdi.hatted", [&] {
    Worst<T> w;
    for (std::size_t n = 1; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < 10; ++k) {
        const T& x = pts[k];
        const T& y = pts[k + 10];
        w.add(cdkernel::cd_residual_hat(b, n, x, y), term_scale(b, 0, 0, n, y, x), "n=" + std::to_string(n));
      }
    return w.outcome("(x+y) sum q^_j(y) p^_j(x) against the boundary block at 10 point pairs");
  });
}

template <class T>
CheckOutcome pade_outcome(const std::vector<std::pair<std::string, nikishin::PadeCertificate<T>>>& certs,
                          const std::string& what, const T& extra = T(0), Real extra_scale = 1) {
  Worst<T> w;
  for (const auto& [at, c] : certs) w.add(c.pass() ? T(0) : (is_zero(c.worst) ? T(1) : c.worst), 1, at);
  w.add(extra, extra_scale, "against the family");
  return w.outcome(what);
}

template <class T>
void suite_pade(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  const auto& alpha = b.alpha();
  const auto& beta = b.beta();
  const std::size_t top = std::min<std::size_t>(N - 1, 4);
  rep.run("pade.plucker", [&] {
    Worst<T> w;
    for (const T& z : test_points(alpha, beta, 10))
      for (bool sw : {false, true}) {
        Real s = 1;
        if constexpr (!is_exact_v<T>) s = to_real(T(alpha.moment(0) * beta.moment(0))) * (1 + 1 / std::abs(z));
        w.add(nikishin::plucker_residual(alpha, beta, z, sw), s, sw ? "swapped" : "plain");
      }
    return w.outcome("W_b W_a* - W_ba* - W_a*b and the swapped form at 10 points");
  });
  rep.run("pade.q_side", [&] {
    std::vector<std::pair<std::string, nikishin::PadeCertificate<T>>> certs;
    T gap(0);
    auto pair = nikishin::q_side_pair(alpha, beta);
    for (std::size_t n = 1; n <= top; ++n) {
      auto sol = nikishin::pade_solve(pair, n);
      certs.push_back({"n=" + std::to_string(n), nikishin::order_check(pair, sol)});
      for (std::size_t k = 0; k <= n; ++k) gap += abs_of(T(sol.Q[k] - b.family().q[n][k]));
    }
    return pade_outcome(certs, "R_b, R_ba* = O(1/z), R_a*b = O(z^{-n-1}); Q = q~_n", gap);
  });
  rep.run("pade.p_side", [&] {
    std::vector<std::pair<std::string, nikishin::PadeCertificate<T>>> certs;
    T gap(0);
    auto pair = nikishin::p_side_pair(alpha, beta);
    for (std::size_t n = 1; n <= top; ++n) {
      auto sol = nikishin::pade_solve(pair, n);
      certs.push_back({"n=" + std::to_string(n), nikishin::order_check(pair, sol)});
      for (std::size_t k = 0; k <= n; ++k) gap += abs_of(T(sol.Q[k] - b.family().p[n][k]));
    }
    return pade_outcome(certs, "alpha and beta exchanged; Q = p~_n", gap);
  });
  rep.run("pade.switched", [&] {
    std::vector<std::pair<std::string, nikishin::PadeCertificate<T>>> certs;
    auto pair = nikishin::switched_pair(alpha, beta);
    for (std::size_t n = 1; n <= top; ++n) {
      Poly<T> Q = poly_reflect(b.family().p[n]);
      if (n % 2 == 1) Q = poly_scale(Q, T(-1));
      certs.push_back({"n=" + std::to_string(n), nikishin::order_check(pair, nikishin::pade_from(pair, Q, n))});
    }
    return pade_outcome(certs, "switched problem with Q(z) = (-1)^n p~_n(-z)");
  });
}

template <class T>
void suite_duality(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  auto pts = test_points(b.alpha(), b.beta(), 10);
  rep.run("duality.extended_cd", [&] {
    Worst<T> w;
    for (std::size_t n = 2; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < 5; ++k)
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c)
            w.add(nikishin::ecd_residual(b, a, c, n, pts[k], pts[k + 5]), term_scale(b, a, c, n, pts[k], pts[k + 5]),
                  "n=" + std::to_string(n) + " (a,b)=(" + std::to_string(a) + "," + std::to_string(c) + ")");
    return w.outcome("(w+z) q_a^T Pi p_b = q_a^T A(-w) p^_b - F_ab, all 9 (a,b), 5 point pairs");
  });
  rep.run("duality.extended_cd_hatted", [&] {
    Worst<T> w;
    std::string literal;
    for (std::size_t n = 2; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < 5; ++k)
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c) {
            auto r = nikishin::ecd_hat_residual(b, a, c, n, pts[k], pts[k + 5]);
            const std::string at =
                "n=" + std::to_string(n) + " (a,b)=(" + std::to_string(a) + "," + std::to_string(c) + ")";
            Real s = term_scale(b, a, c, n, pts[k], pts[k + 5]);
            w.add(r.derived, s, at);
            w.add(r.constructive, s, at + " constructive");
            if (!vanishes(r.literal, s) && literal.find("(" + std::to_string(a) + "," + std::to_string(c) + ")") ==
                                               std::string::npos)
              literal += " (" + std::to_string(a) + "," + std::to_string(c) + ")";
          }
    CheckOutcome o = w.outcome("hatted identity with the derived correction matrix and the constructive form");
    if (!literal.empty()) o.detail += "; literal correction matrix is off at" + literal;
    return o;
  });
  rep.run("duality.perfect_pairing", [&] {
    Worst<T> w;
    for (std::size_t n = 2; n + 2 <= N; ++n)
      for (std::size_t k = 0; k < 5; ++k)
        for (int a = 0; a < 3; ++a)
          for (int c = 0; c < 3; ++c)
            w.add(nikishin::duality_residual(b, a, c, n, pts[k]), term_scale(b, a, c, n, T(-pts[k]), pts[k]),
                  "n=" + std::to_string(n));
    return w.outcome("q_a^T(-z) A(z) p^_b(z) = J_ab for every n in the window");
  });
  if (N >= 3) {
    rep.run("duality.hatted_vectors", [&] {
      auto L = nikishin::lemma_residuals(b, pts[0], pts[1]);
      Worst<T> w;
      Real s = window_scale(b, pts[0], pts[1]);
      for (int i = 0; i < 3; ++i) {
        w.add(L.wq[i], s, "w q^_" + std::to_string(i));
        w.add(L.zp[i], s, "z p^_" + std::to_string(i));
      }
      return w.outcome("w q^_a and (z - X) L^ p^_b in closed form");
    });
  }
}

template <class T>
void suite_rhp_discrete(Report& rep, const Bundle<T>& b) {
  const std::size_t N = b.order();
  auto pts = test_points(b.alpha(), b.beta(), 5);
  rep.run("rhp.det_gamma", [&] {
    Worst<T> w;
    for (std::size_t n = 2; n < N; ++n)
      for (const T& p : pts) {
        auto g = rhp::assemble_gamma(b, n, p);
        Real s = 1;
        if constexpr (!is_exact_v<T>)
          for (auto& r : g)
            for (auto& v : r) s = std::max(s, std::abs(v));
        w.add(T(rhp::det3(g) - T(1)), s * s * s, "n=" + std::to_string(n));
      }
    return w.outcome("det Gamma = 1 at 5 points, 2 <= n <= order-1");
  });
  rep.run("rhp.det_gamma_hat", [&] {
    Worst<T> w;
    for (std::size_t n = 1; n < N; ++n)
      for (const T& p : pts) {
        auto g = rhp::assemble_gamma_hat(b, n, p);
        Real s = 1;
        if constexpr (!is_exact_v<T>)
          for (auto& r : g)
            for (auto& v : r) s = std::max(s, std::abs(v));
        w.add(T(rhp::det3(g) - T(1)), s * s * s, "n=" + std::to_string(n));
      }
    return w.outcome("det Gamma^ = 1 at 5 points, 1 <= n <= order-1");
  });
  rep.run("rhp.assembly_routes", [&] {
    Worst<Real> w;
    for (std::size_t n = 2; n < N; ++n)
      for (const T& p : pts) {
        Real s = 1;
        if constexpr (!is_exact_v<T>) s = window_scale(b, p, p);
        Real g1 = rhp::route_gap(b, rhp::Which::Gamma, n, p);
        Real g2 = rhp::route_gap(b, rhp::Which::GammaHat, n, p);
        for (auto [g, tag] : {std::pair{g1, "Gamma"}, std::pair{g2, "Gamma^"}}) {
          if constexpr (is_exact_v<T>) {
            if (g != 0 && w.ok) w.ok = false, w.where = std::string(tag) + " n=" + std::to_string(n);
            w.value = std::max(w.value, g);
          } else {
            w.add(g, s, std::string(tag) + " n=" + std::to_string(n));
          }
        }
      }
    return w.outcome("prefactor form against the recovery form");
  });
  rep.run("rhp.asymptotics", [&] {
    CheckOutcome o;
    o.pass = true;
    for (std::size_t n = 2; n < N; ++n)
      for (auto which : {rhp::Which::Gamma, rhp::Which::GammaHat}) {
        auto c = rhp::asymptotic_check(b, n, which);
        if (!c.pass) {
          o.pass = false;
          o.detail += std::string(rhp::which_name(which)) + " n=" + std::to_string(n) + ": " + c.detail + "; ";
        }
      }
    o.residual = o.pass ? "0" : "1";
    o.detail += "Gamma ~ diag(w^n, w^-1, w^{1-n}), Gamma^ ~ diag(z^n, 1, z^-n) by series";
    return o;
  });
  rep.run("rhp.constants", [&] {
    Worst<T> w;
    for (std::size_t n = 2; n < N; ++n) {
      auto c = rhp::extract_constants(b, n);
      w.add(T(c.c_squared - c.expected_c_squared), to_real(T(abs_of(c.expected_c_squared))) * 1e2,
            "c^2 n=" + std::to_string(n));
      w.add(T(c.eta_squared - c.expected_eta_squared), to_real(T(abs_of(c.expected_eta_squared))) * 1e2,
            "eta^2 n=" + std::to_string(n));
    }
    return w.outcome("c_{n-1}^2 and eta_{n-1}^2 read off row 2 of Gamma");
  });
  rep.run("rhp.q1_at_infinity", [&] {
    Worst<Real> w;
    for (std::size_t n = 0; n < N; ++n) {
      Real r = rhp::q1_asymptotic_ratio(b, n, 1e6L);
      Real dev = std::abs(r - 1);
      if (dev > 1e-4L) w.ok = false, w.where = w.where.empty() ? "n=" + std::to_string(n) : w.where;
      w.value = std::max(w.value, dev);
    }
    return w.outcome("w q_{1,n}(w) / eta_n at w = 1e6 within 1e-4");
  });
}

void suite_rhp_density(Report& rep, const Bundle<Real>& b, const rhp::DensityPair& d, const Options& opt) {
  std::vector<Real> eps = {1e-4L, 1e-5L, 1e-6L};
  if (opt.eps) eps = {*opt.eps, *opt.eps / 10, *opt.eps / 100};
  json table = json::array();
  for (auto which : {rhp::Which::Gamma, rhp::Which::GammaHat}) {
    const measure::DensityMeasure& m = which == rhp::Which::Gamma ? d.beta : d.alpha;
    const Real w0 = (m.a + m.b) / 2;
    const std::size_t n = std::min<std::size_t>(2, b.order() - 1);
    rep.run(std::string("rhp.jump.") + rhp::which_name(which), [&] {
      auto st = rhp::jump_study(b, d, which, n, w0, eps);
      for (std::size_t k = 0; k < eps.size(); ++k)
        table.push_back({{"matrix", rhp::which_name(which)},
                         {"n", n},
                         {"w0", jv(w0)},
                         {"eps", jv(st.eps[k])},
                         {"residual", jv(st.residual[k])},
                         {"relative", jv(st.relative[k])}});
      CheckOutcome o;
      // entries scale like 1/h_{n-1}, so the gate is on the relative residual
      o.pass = std::isfinite(st.slope) && st.slope > 0.5L && st.slope < 2.0L && st.relative.front() < 1e-2L;
      o.residual = format_real(st.relative.front());
      o.detail = "relative residual at eps = " + format_real(st.eps.front()) + " (absolute " +
                 format_real(st.residual.front()) + "), slope " + format_real(st.slope) +
                 " of log residual against log eps at w0 = " + format_real(w0);
      return o;
    });
  }
  rep.attach("jump_table", table);
}

template <class T>
Result verify_typed(const io::ProblemSpec& spec, const Options& opt) {
  const std::size_t N = opt.order;
  if (N < 2) fail(ErrorKind::Input, "order must be at least 2");
  const auto& names = suite_names();
  if (opt.suite != "all" && std::find(names.begin(), names.end(), opt.suite) == names.end())
    fail(ErrorKind::Input, "unknown suite \"" + opt.suite + "\"");
  auto wants = [&](const char* s) { return opt.suite == "all" || opt.suite == s; };

  DiscreteMeasure<T> alpha = atoms_of<T>(spec.alpha), beta = atoms_of<T>(spec.beta);
  Report rep(opt.suite, mode_name<T>(), N);
  std::vector<std::string> warnings;
  std::size_t kmax = opt.kmax.value_or(std::min<std::size_t>(N, 4));
  if (kmax > N) {
    warnings.push_back("kmax clipped to the order " + std::to_string(N));
    kmax = N;
  }
  if (wants("tp")) suite_tp(rep, alpha, beta, N, kmax);

  bool need_bundle = false;
  for (const char* s : {"bop", "recurrence", "zeros", "cdi", "pade", "duality", "rhp"}) need_bundle |= wants(s);
  if (need_bundle) {
    std::optional<Bundle<T>> bundle;
    rep.run("bundle", [&] {
      bundle.emplace(alpha, beta, N, 2 * N + 6);
      return CheckOutcome{true, "0", "bimoments, family, recurrence and hatted family built"};
    });
    if (bundle) {
      const Bundle<T>& b = *bundle;
      if (wants("bop")) suite_bop(rep, b);
      if (wants("recurrence")) suite_recurrence(rep, b);
      if (wants("zeros")) suite_zeros(rep, b);
      if (wants("cdi")) {
        if (N >= 3)
          suite_cdi(rep, b);
        else
          rep.skip("cdi", "needs order >= 3");
      }
      if (wants("pade")) suite_pade(rep, b);
      if (wants("duality")) {
        if (N >= 4)
          suite_duality(rep, b);
        else
          rep.skip("duality", "needs order >= 4");
      }
      if (wants("rhp")) {
        if (N >= 3)
          suite_rhp_discrete(rep, b);
        else
          rep.skip("rhp", "needs order >= 3");
        if constexpr (!is_exact_v<T>) {
          if (!spec.discrete()) suite_rhp_density(rep, b, rhp::require_density(spec.alpha, spec.beta), opt);
        }
      }
    }
  }
  rep.attach("warnings", warnings);
  Result r = rep.finish(opt.output);
  r.warnings = warnings;
  return r;
}

// ---- single-shot commands ----

template <class T>
Result bimoments_typed(const io::ProblemSpec& spec, const Options& opt) {
  const std::size_t N = opt.order;
  if (N < 1) fail(ErrorKind::Input, "order must be at least 1");
  DiscreteMeasure<T> alpha = atoms_of<T>(spec.alpha), beta = atoms_of<T>(spec.beta);
  std::vector<std::string> warnings;
  std::size_t kmax = opt.kmax.value_or(N);
  if (kmax > N) {
    warnings.push_back("kmax clipped to the order " + std::to_string(N));
    kmax = N;
  }
  auto I = bimoment::compute_bimoments(alpha, beta, bimoment::Kernel<T>::cauchy(), N + 1, N + 1);
  json doc;
  doc["command"] = "bimoments";
  doc["mode"] = mode_name<T>();
  doc["order"] = N;
  doc["I"] = jv(I.entries.leading(N));
  std::vector<T> D = bimoment::leading_minors(I, N);
  doc["D"] = jv(D);
  bool degenerate = false;
  for (std::size_t n = 0; n < D.size(); ++n)
    if (is_zero(D[n]) || (!is_exact_v<T> && !(D[n] > 0))) {
      degenerate = true;
      warnings.push_back("degenerate: D_" + std::to_string(n + 1) + " = " + show(D[n]) +
                         "; the measures support fewer than " + std::to_string(n + 1) + " biorthogonal pairs");
      break;
    }
  doc["degenerate"] = degenerate;
  auto cert = bimoment::check_total_positivity(I.entries.leading(N), kmax);
  json tp;
  tp["pass"] = cert.pass;
  tp["kmax"] = cert.kmax;
  tp["checked"] = cert.checked;
  tp["min_minor"] = jv(cert.min_minor);
  if (cert.violation)
    tp["violation"] = {{"size", cert.violation->size},
                       {"row", cert.violation->row},
                       {"col", cert.violation->col},
                       {"value", jv(cert.violation_value)}};
  doc["tp"] = tp;
  auto R = bimoment::rank_one_shift_residual(I, alpha.moments(int(N + 1)), beta.moments(int(N + 1)), N);
  T res = max_abs(R);
  bool shift_ok = vanishes(res, mag(max_abs(I.entries)));
  doc["rank_one_shift"] = {{"residual", jv(res)}, {"pass", shift_ok}};
  doc["warnings"] = warnings;
  Result r;
  r.text = render(doc, opt.output);
  r.exit_code = cert.pass && shift_ok ? 0 : 1;
  r.warnings = warnings;
  return r;
}

template <class T>
T parse_point(const Options& opt, const T& fallback) {
  if (!opt.point) return fallback;
  Rational v = parse_rational(*opt.point);
  if constexpr (is_exact_v<T>)
    return v;
  else
    return to_real(v);
}

template <class T>
Bundle<T> make_bundle(const io::ProblemSpec& spec, std::size_t order) {
  return Bundle<T>(atoms_of<T>(spec.alpha), atoms_of<T>(spec.beta), order, 2 * order + 6);
}

template <class T>
Result zeros_typed(const io::ProblemSpec& spec, const Options& opt) {
  const std::size_t n = opt.degree.value_or(1);
  if (n < 1) fail(ErrorKind::Input, "degree must be at least 1");
  Bundle<T> b = make_bundle<T>(spec, std::max(opt.order, n + 1));
  json doc;
  doc["command"] = "zeros";
  doc["mode"] = mode_name<T>();
  doc["degree"] = n;
  bool ok = true;
  for (bop::Side side : {bop::Side::P, bop::Side::Q}) {
    auto z = zeros::zeros_of(b, side, n);
    json s;
    s["zeros"] = jv(z.zeros);
    s["companion_agreement"] = jv(z.companion_agreement);
    s["real"] = z.real;
    s["positive"] = z.positive;
    s["in_hull"] = z.in_hull;
    s["min_gap"] = jv(z.min_gap);
    s["certified"] = z.certified;
    bool good = z.real && z.positive && z.in_hull && !z.coincident;
    if (n > 1) {
      auto lower = zeros::zeros_of(b, side, n - 1);
      bool inter = zeros::interlacing_check(z.zeros, lower.zeros);
      s["interlaces_degree"] = n - 1;
      s["interlacing"] = inter;
      good = good && inter;
    }
    ok = ok && good;
    doc[side == bop::Side::P ? "p" : "q"] = s;
  }
  Result r;
  r.text = render(doc, opt.output);
  r.exit_code = ok ? 0 : 1;
  return r;
}

template <class T>
Result bop_typed(const io::ProblemSpec& spec, const Options& opt) {
  const std::size_t n = opt.degree.value_or(0);
  const auto alpha = atoms_of<T>(spec.alpha), beta = atoms_of<T>(spec.beta);
  // the pair itself only needs D_{n+1} > 0
  auto I = bimoment::compute_bimoments(alpha, beta, bimoment::Kernel<T>::cauchy(), n + 1);
  auto f = bop::build_family(I, n + 1);
  auto avg = bop::averages(f, alpha.moments(int(n + 1)), beta.moments(int(n + 1)));
  json doc;
  std::vector<std::string> warnings;
  doc["command"] = "bop";
  doc["mode"] = mode_name<T>();
  doc["degree"] = n;
  doc["p"] = jv(f.p[n]);
  doc["q"] = jv(f.q[n]);
  doc["h"] = jv(f.h[n]);
  doc["pi"] = jv(avg.pi[n]);
  doc["eta"] = jv(avg.eta[n]);
  try {
    Bundle<T> b = make_bundle<T>(spec, std::max<std::size_t>(opt.order, n + 2));
    doc["phat"] = jv(b.hatted().phat[n]);
    if (n < b.hatted().qhat.size()) doc["qhat"] = jv(b.hatted().qhat[n]);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Degenerate) throw;
    warnings.push_back(std::string("hatted polynomials omitted: ") + e.what());
  }
  T res = bop::biorthogonality_residual(f, I);
  doc["biorthogonality_residual"] = jv(res);
  doc["warnings"] = warnings;
  Result r;
  r.text = render(doc, opt.output);
  r.exit_code = vanishes(res, mag(max_abs(I.entries))) ? 0 : 1;
  r.warnings = warnings;
  return r;
}

template <class T>
Result recurrence_typed(const io::ProblemSpec& spec, const Options& opt) {
  Bundle<T> b = make_bundle<T>(spec, opt.order);
  const auto& r = b.rec();
  json doc;
  doc["command"] = "recurrence";
  doc["mode"] = mode_name<T>();
  doc["order"] = opt.order;
  doc["X"] = jv(r.X);
  doc["Y"] = jv(r.Y);
  doc["Y_monic"] = jv(r.Ymonic);
  doc["L"] = jv(r.L);
  doc["Lhat"] = jv(r.Lhat);
  json bands;
  for (const auto* op : {&r.A, &r.Ahat, &r.B, &r.Bhat})
    bands[op->name] = {{"band", {op->lo, op->hi}},
                       {"valid_rows", op->valid_rows},
                       {"valid_cols", op->valid_cols},
                       {"support_violation", jv(op->support_violation())},
                       {"matrix", jv(op->m)}};
  doc["operators"] = bands;
  doc["pi"] = jv(r.pi);
  doc["eta"] = jv(r.eta);
  doc["h"] = jv(r.h);
  bool ok = true;
  Real s = mag(max_abs(r.X)) + mag(max_abs(r.Y)) + 1;
  for (const auto* op : {&r.A, &r.Ahat, &r.B, &r.Bhat}) ok = ok && vanishes(op->support_violation(), s);
  Result res;
  res.text = render(doc, opt.output);
  res.exit_code = ok ? 0 : 1;
  return res;
}

template <class T>
Result rhp_typed(const io::ProblemSpec& spec, const Options& opt) {
  const std::size_t n = opt.degree.value_or(2);
  if (n < 2) fail(ErrorKind::Input, "Gamma needs n >= 2");
  Bundle<T> b = make_bundle<T>(spec, std::max(opt.order, n + 1));
  const T w = parse_point<T>(opt, T(10));
  auto g = rhp::assemble_gamma(b, n, w);
  auto gh = rhp::assemble_gamma_hat(b, n, w);
  T d = rhp::det3(g), dh = rhp::det3(gh);
  json doc;
  doc["command"] = "rhp";
  doc["mode"] = mode_name<T>();
  doc["n"] = n;
  doc["point"] = jv(w);
  doc["Gamma"] = jv(g);
  doc["det"] = jv(d);
  doc["GammaHat"] = jv(gh);
  doc["det_hat"] = jv(dh);
  bool ok;
  if constexpr (is_exact_v<T>)
    ok = d == 1 && dh == 1;
  else
    ok = std::abs(d - 1) < 1e-9L && std::abs(dh - 1) < 1e-9L;
  Result r;
  r.text = render(doc, opt.output);
  r.exit_code = ok ? 0 : 1;
  return r;
}

template <template <class> class F>
Result dispatch(const io::ProblemSpec& spec, const Options& opt) {
  if (exact_mode(spec, opt)) return F<Rational>::run(spec, opt);
  return F<Real>::run(spec, opt);
}

#define CBOP_COMMAND(NAME)                                                                              \
  template <class T>                                                                                    \
  struct NAME##_cmd {                                                                                   \
    static Result run(const io::ProblemSpec& s, const Options& o) { return NAME##_typed<T>(s, o); }     \
  };

CBOP_COMMAND(bimoments)
CBOP_COMMAND(verify)
CBOP_COMMAND(zeros)
CBOP_COMMAND(bop)
CBOP_COMMAND(recurrence)
CBOP_COMMAND(rhp)

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"tp",   "bop",  "recurrence", "zeros",
                                                 "cdi",  "pade", "duality",    "rhp"};
  return names;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Input:
    case ErrorKind::Degenerate:
    case ErrorKind::PrecisionExhausted:
    case ErrorKind::OrderUnderflow:
    case ErrorKind::PoleEvaluation:
      return 2;
    case ErrorKind::TheoryViolation:
      return 3;
    default:
      return 1;
  }
}

Result bimoments(const io::ProblemSpec& s, const Options& o) { return dispatch<bimoments_cmd>(s, o); }
Result verify(const io::ProblemSpec& s, const Options& o) { return dispatch<verify_cmd>(s, o); }
Result zeros(const io::ProblemSpec& s, const Options& o) { return dispatch<zeros_cmd>(s, o); }
Result bop(const io::ProblemSpec& s, const Options& o) { return dispatch<bop_cmd>(s, o); }
Result recurrence(const io::ProblemSpec& s, const Options& o) { return dispatch<recurrence_cmd>(s, o); }
Result rhp(const io::ProblemSpec& s, const Options& o) { return dispatch<rhp_cmd>(s, o); }

}  // namespace cbop::cmd
