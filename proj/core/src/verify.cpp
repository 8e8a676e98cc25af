#include "mui/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <future>
#include <map>
#include <random>
#include <sstream>

#include <json.hpp>

#include "mui/algebra.hpp"
#include "mui/error.hpp"
#include "mui/essential.hpp"
#include "mui/invariants.hpp"
#include "mui/linalg.hpp"
#include "mui/sampling.hpp"
#include "mui/steenrod.hpp"

namespace mui {

namespace {

std::uint64_t ipow(std::uint64_t base, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

/// Collects cases for one report. Randomized property checks are tallied:
/// failures are kept verbatim, passes only counted.
class Recorder {
 public:
  explicit Recorder(std::vector<CaseResult>& cases) : cases_(cases) {}

  void check(std::string id, std::string expected, std::string actual, bool pass) {
    cases_.push_back({std::move(id), std::move(expected), std::move(actual), pass});
  }

  void identity(std::string id, const Element& expected, const Element& actual) {
    const bool pass = expected == actual;
    check(std::move(id), to_string(expected), to_string(actual), pass);
  }

  void zero(std::string id, const Element& actual) {
    check(std::move(id), "0", to_string(actual), actual.is_zero());
  }

  /// Span equality; on failure the actual field names an element in one
  /// span but not the other.
  void spans(std::string id, const DegreeSpan& expected, const DegreeSpan& actual) {
    std::string exp = "dim " + std::to_string(expected.rank());
    std::string act = "dim " + std::to_string(actual.rank());
    const bool pass = expected == actual;
    if (!pass) {
      for (const Element& y : expected.elements()) {
        if (!actual.contains(y)) {
          act += "; missing " + to_string(y);
          break;
        }
      }
      for (const Element& y : actual.elements()) {
        if (!expected.contains(y)) {
          act += "; unexpected " + to_string(y);
          break;
        }
      }
    }
    check(std::move(id), std::move(exp), std::move(act), pass);
  }

  void tally(const std::string& id, const Element& expected, const Element& actual) {
    ++tally_total_;
    if (expected == actual) {
      ++tally_passed_;
    } else {
      check(id, to_string(expected), to_string(actual), false);
    }
  }

  void close_tally(const std::string& label) {
    check(label, std::to_string(tally_total_) + " passed",
          std::to_string(tally_passed_) + " passed", tally_total_ == tally_passed_);
    tally_total_ = tally_passed_ = 0;
  }

 private:
  std::vector<CaseResult>& cases_;
  std::size_t tally_total_ = 0;
  std::size_t tally_passed_ = 0;
};

struct Context {
  const VerifyConfig& config;
  Ring ring;
  Recorder& rec;
  std::mt19937_64 rng;

  std::uint64_t D() const { return config.max_degree; }
  int n() const { return ring.rank(); }
};

// Degree-wise Ess pieces for 0..D.
std::vector<EssentialPiece> ess_pieces(const Ring& ring, std::uint64_t max_degree) {
  std::vector<EssentialPiece> out;
  for (std::uint64_t d = 0; d <= max_degree; ++d) out.push_back(ess_basis(ring, d));
  return out;
}

std::string degree_range(std::uint64_t D) { return "degrees 0.." + std::to_string(D); }

// ---------------------------------------------------------------------------
// Invariants

std::string check_eqnLn(Context& ctx) {
  const Ring& ring = ctx.ring;
  const Element L = dickson_L(ring);
  ctx.rec.identity("det C = product of forms with last nonzero coefficient 1", L,
                   monic_linear_forms_product(ring, MonicConvention::TrailingCoefficient));
  Monomial diagonal;
  std::uint64_t power = 1;
  for (int i = 0; i < ring.rank(); ++i, power *= ring.p()) diagonal.exponents[i] = static_cast<Exponent>(power);
  ctx.rec.check("coefficient of x1 x2^p .. xn^{p^{n-1}}", "1", std::to_string(L.coefficient(diagonal)),
                L.coefficient(diagonal) == 1);
  const Element leading = monic_linear_forms_product(ring, MonicConvention::LeadingCoefficient);
  std::string sign = "neither";
  if (leading == L) sign = "+1";
  if (leading == -L) sign = "-1";
  ctx.rec.check("product of forms with first nonzero coefficient 1 = sign * L_n", "+1 or -1",
                sign, sign != "neither");
  return "exact identity";
}

std::string check_Mns(Context& ctx) {
  const auto subgroups = enumerate_maximal_subgroups(ctx.ring);
  for (int s = 1; s <= ctx.n(); ++s) {
    const Element M = mui_invariant(ctx.ring, s);
    ctx.rec.identity("M" + std::to_string(s) + " in N_1", M, project_exterior_rank(M, 1));
    for (const MaximalSubgroup& h : subgroups) {
      std::string form;
      for (Scalar c : h.form) form += std::to_string(c);
      ctx.rec.zero("res M" + std::to_string(s) + " to ker(" + form + ")", restrict(M, h));
    }
  }
  return std::to_string(subgroups.size()) + " maximal subgroups";
}

std::string check_MnST(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  for (IndexSet S : all_subsets(ctx.n())) {
    for (IndexSet T : all_subsets(ctx.n())) {
      const Element product = table.M.at(S) * table.M.at(T);
      const std::string id = "M" + to_string(S) + " M" + to_string(T);
      if ((S & T).empty()) {
        const Element expected = table.L * table.M.at(S | T);
        const bool pass = product == expected || product == -expected;
        ctx.rec.check(id, "+-L_n M" + to_string(S | T) + " = +-(" + to_string(expected) + ")",
                      to_string(product), pass);
      } else {
        ctx.rec.zero(id, product);
      }
    }
  }
  return "all subset pairs";
}

std::string check_MnS(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  for (const auto& [S, M] : table.M) {
    ctx.rec.check("M" + to_string(S) + " nonzero", "nonzero", to_string(M), !M.is_zero());
  }
  Monomial all_a;
  all_a.exterior = IndexSet::full(ctx.n()).mask();
  const Element& top = table.M.at(IndexSet::full(ctx.n()));
  const Element expected = Element::from_monomial(ctx.ring, all_a, table.top_scalar);
  ctx.rec.check("M{1..n} = lambda a1..an, lambda != 0", "lambda * " + to_string(ctx.ring, all_a),
                to_string(top), top == expected && table.top_scalar != 0);
  return "all subsets";
}

// ---------------------------------------------------------------------------
// Ideal statements, degreewise

std::string check_EssSquared(Context& ctx) {
  const auto ess = ess_pieces(ctx.ring, ctx.D());
  const Element L = dickson_L(ctx.ring);
  const std::uint64_t degL = total_degree(L).value;
  std::vector<std::vector<Element>> bases;
  for (const auto& piece : ess) bases.push_back(piece.total.elements());
  for (std::uint64_t d = 0; d <= ctx.D(); ++d) {
    DegreeSpan squares(monomial_basis(ctx.ring, d));
    for (std::uint64_t d1 = 0; 2 * d1 <= d; ++d1) {
      for (const Element& y : bases[d1]) {
        for (const Element& z : bases[d - d1]) squares.insert(y * z);
      }
    }
    DegreeSpan multiples(monomial_basis(ctx.ring, d));
    if (d >= degL) {
      for (const Element& y : bases[d - degL]) multiples.insert(L * y);
    }
    ctx.rec.spans("d=" + std::to_string(d), multiples, squares);
  }
  return degree_range(ctx.D());
}

DegreeSpan exterior_rank_at_least(const Ring& ring, std::uint64_t d, int min_rank) {
  auto basis = monomial_basis(ring, d);
  DegreeSpan span(basis);
  for (const Monomial& m : basis->monomials) {
    if (m.exterior_rank() >= min_rank) span.insert(Element::from_monomial(ring, m));
  }
  return span;
}

DegreeSpan joint_annihilator(const Ring& ring, std::uint64_t d, const std::vector<Element>& elements) {
  auto basis = monomial_basis(ring, d);
  std::vector<std::vector<Element>> images;
  for (const Monomial& m : basis->monomials) {
    const Element y = Element::from_monomial(ring, m);
    std::vector<Element> tuple;
    for (const Element& e : elements) tuple.push_back(y * e);
    images.push_back(std::move(tuple));
  }
  return kernel_of_joint_map(basis, images);
}

std::string check_jointAnn(Context& ctx) {
  std::vector<Element> Ms;
  for (int s = 1; s <= ctx.n(); ++s) Ms.push_back(mui_invariant(ctx.ring, s));
  for (std::uint64_t d = 0; d <= ctx.D(); ++d) {
    ctx.rec.spans("d=" + std::to_string(d), exterior_rank_at_least(ctx.ring, d, ctx.n()),
                  joint_annihilator(ctx.ring, d, Ms));
  }
  return degree_range(ctx.D());
}

std::string check_jointAnn2(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  for (int r = 1; r <= ctx.n(); ++r) {
    std::vector<Element> Ms;
    for (IndexSet S : subsets_of_size(ctx.n(), r)) Ms.push_back(table.M.at(S));
    for (std::uint64_t d = 0; d <= ctx.D(); ++d) {
      ctx.rec.spans("r=" + std::to_string(r) + " d=" + std::to_string(d),
                    exterior_rank_at_least(ctx.ring, d, ctx.n() - r + 1),
                    joint_annihilator(ctx.ring, d, Ms));
    }
  }
  return "r = 1..n, " + degree_range(ctx.D());
}

std::string check_free(Context& ctx) {
  const Ring& ring = ctx.ring;
  const int n = ctx.n();
  const MuiTable table = MuiTable::build(ring);

  // Linear independence: decompose recovers random coefficients.
  std::uniform_int_distribution<int> pick_rank(0, n);
  std::uniform_int_distribution<std::uint64_t> pick_extra(0, 3);
  for (std::size_t k = 0; k < ctx.config.module_samples; ++k) {
    const int r = pick_rank(ctx.rng);
    const auto sets = subsets_of_size(n, r);
    std::uint64_t top = 0;
    for (IndexSet S : sets) top = std::max(top, mui_degree(ring, S));
    // Target degree with the parity of r, at least the largest M_S degree.
    const std::uint64_t d = top + 2 * pick_extra(ctx.rng);
    MuiDecomposition coefficients;
    for (IndexSet S : sets) {
      coefficients.insert_or_assign(S, random_polynomial(ring, (d - mui_degree(ring, S)) / 2, ctx.rng, 3));
    }
    const Element y = reconstruct(table, coefficients);
    const std::string id = "random combination " + std::to_string(k);
    try {
      const MuiDecomposition found = decompose(y, table);
      bool same = true;
      std::string expected, actual;
      for (IndexSet S : sets) {
        const Element got = found.count(S) ? found.at(S) : Element(ring);
        same = same && got == coefficients.at(S);
        expected += to_string(S) + ": " + to_string(coefficients.at(S)) + "; ";
        actual += to_string(S) + ": " + to_string(got) + "; ";
      }
      if (!same) ctx.rec.check(id, expected, actual, false);
      ctx.rec.tally(id, Element(ring), Element(ring));
    } catch (const std::exception& e) {
      ctx.rec.check(id, "decomposition of " + to_string(y), e.what(), false);
    }
  }
  ctx.rec.close_tally("decompose(reconstruct(f)) = f");

  // Spanning and freeness, degreewise.
  for (std::uint64_t d = 0; d <= ctx.D(); ++d) {
    const EssentialPiece piece = ess_basis(ring, d);
    for (int r = 0; r <= n; ++r) {
      const std::string tag = "d=" + std::to_string(d) + " r=" + std::to_string(r);
      const DegreeSpan& ess = piece.by_rank[static_cast<std::size_t>(r)];
      for (const Element& y : ess.elements()) {
        try {
          decompose(y, table);
        } catch (const std::exception& e) {
          ctx.rec.check(tag + " decompose " + to_string(y), "exact reconstruction", e.what(), false);
        }
      }
      DegreeSpan module(monomial_basis(ring, d));
      std::uint64_t free_count = 0;
      for (IndexSet S : subsets_of_size(n, r)) {
        const std::uint64_t dS = mui_degree(ring, S);
        if (dS > d || (d - dS) % 2 != 0) continue;
        const auto polys = monomial_basis(Ring(ring.field(), n), d - dS);
        for (const Monomial& m : polys->monomials) {
          if (!m.is_polynomial()) continue;
          ++free_count;
          module.insert(Element::from_monomial(ring, m) * table.M.at(S));
        }
      }
      ctx.rec.spans(tag + " span of f M_S", ess, module);
      ctx.rec.check(tag + " rank", "free count " + std::to_string(free_count),
                    "free count " + std::to_string(ess.rank()), free_count == ess.rank());
    }
  }
  return std::to_string(ctx.config.module_samples) + " random combinations; " + degree_range(ctx.D());
}

// ---------------------------------------------------------------------------
// Steenrod action

std::string check_betaMns(Context& ctx) {
  const Element L = dickson_L(ctx.ring);
  for (int s = 1; s <= ctx.n(); ++s) {
    ctx.rec.identity("beta M" + std::to_string(s), s == 1 ? L : Element(ctx.ring),
                     bockstein(mui_invariant(ctx.ring, s)));
  }
  ctx.rec.zero("beta L_n", bockstein(L));
  return "exact identity";
}

std::string check_rPMnS(Context& ctx) {
  const Element L = dickson_L(ctx.ring);
  for (int s = 0; s <= ctx.n() - 2; ++s) {
    const std::uint64_t k = ipow(ctx.ring.p(), s);
    for (int r = 1; r <= ctx.n(); ++r) {
      const Element expected = r == s + 2 ? mui_invariant(ctx.ring, r - 1) : Element(ctx.ring);
      ctx.rec.identity("P^" + std::to_string(k) + " M" + std::to_string(r), expected,
                       power_operation(k, mui_invariant(ctx.ring, r)));
    }
    ctx.rec.zero("P^" + std::to_string(k) + " L_n", power_operation(k, L));
  }
  return "s = 0..n-2";
}

std::string check_SteenrodMnS_1(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  for (IndexSet S : all_subsets(ctx.n())) {
    if (S.contains(1)) continue;
    ctx.rec.identity("beta M" + to_string(S.with(1)), table.M.at(S), bockstein(table.M.at(S.with(1))));
  }
  return "all S without 1";
}

std::string check_SteenrodMnS_2(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  const std::uint64_t bound = ipow(ctx.ring.p(), ctx.n() - 1);
  for (IndexSet S : all_subsets(ctx.n())) {
    if (S.empty()) continue;
    Element product = Element::one(ctx.ring);
    for (int s : S.elements()) product = product * table.M.at(IndexSet{s});
    const Element Lpow = power(table.L, static_cast<std::uint64_t>(S.size() - 1));
    for (std::uint64_t m = 0; m < bound; ++m) {
      ctx.rec.identity("m=" + std::to_string(m) + " S=" + to_string(S),
                       power_operation(m, product), Lpow * power_operation(m, table.M.at(S)));
    }
  }
  return "m = 0.." + std::to_string(bound - 1) + ", all nonempty S";
}

std::string check_SteenrodMnS_3(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  for (IndexSet S : all_subsets(ctx.n())) {
    for (int u = 2; u <= ctx.n(); ++u) {
      const IndexSet X = S & IndexSet::prefix(u);
      const IndexSet Y(S.mask() & ~IndexSet::prefix(u).mask());
      const std::uint64_t k = ipow(ctx.ring.p(), u - 2);
      ctx.rec.identity("u=" + std::to_string(u) + " S=" + to_string(S),
                       power_operation(k, table.M.at(X)) * table.M.at(Y),
                       table.L * power_operation(k, table.M.at(S)));
    }
  }
  return "all S, u = 2..n";
}

std::string check_SteenrodMnS_4(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  const std::uint64_t bound = ipow(ctx.ring.p(), ctx.n() - 1);
  for (int r = 1; r <= ctx.n(); ++r) {
    for (std::uint64_t m = 1; m < bound; ++m) {
      ctx.rec.zero("r=" + std::to_string(r) + " m=" + std::to_string(m),
                   power_operation(m, table.M.at(IndexSet::prefix(r))));
    }
  }
  return bound > 1 ? "m = 1.." + std::to_string(bound - 1) : "empty range of m";
}

std::string check_SteenrodMnS_5(Context& ctx) {
  const MuiTable table = MuiTable::build(ctx.ring);
  for (int u = 2; u <= ctx.n(); ++u) {
    const IndexSet T = IndexSet::prefix(u - 2).with(u);
    ctx.rec.identity("u=" + std::to_string(u), table.M.at(IndexSet::prefix(u - 1)),
                     power_operation(ipow(ctx.ring.p(), u - 2), table.M.at(T)));
  }
  return "u = 2..n";
}

std::string check_Steenrod(Context& ctx) {
  const Ring& ring = ctx.ring;
  const MuiTable table = MuiTable::build(ring);
  const Element top = table.M.at(IndexSet::full(ctx.n()));
  for (IndexSet S : all_subsets(ctx.n())) {
    const SteenrodWord word = mui_word(ring, S);
    ctx.rec.identity("M" + to_string(S) + " = [" + to_string(word, ring.field()) + "] M{1..n}",
                     table.M.at(S), apply_word(word, top));
  }
  Monomial all_a;
  all_a.exterior = IndexSet::full(ctx.n()).mask();
  const auto closure = steenrod_closure(Element::from_monomial(ring, all_a), ctx.D());
  for (std::uint64_t d = 0; d <= ctx.D(); ++d) {
    ctx.rec.spans("d=" + std::to_string(d), ess_basis(ring, d).total, closure[d]);
  }
  return degree_range(ctx.D());
}

std::string check_fundamental(Context& ctx) {
  const Ring& ring = ctx.ring;
  const int n = ctx.n();
  const auto c = dickson_invariants(ring);
  const std::uint64_t pn1 = ipow(ring.p(), n - 1);
  // x^{p^n} = sum_r coef_r x^{p^r}
  std::vector<Element> coef;
  for (int r = 0; r < n; ++r) coef.push_back((n - r + 1) % 2 == 0 ? c[r] : -c[r]);
  for (int i = 1; i <= n; ++i) {
    Element rhs(ring);
    for (int r = 0; r < n; ++r) rhs += coef[r] * Element::x(ring, i, static_cast<Exponent>(ipow(ring.p(), r)));
    ctx.rec.identity("fundamental equation at x" + std::to_string(i),
                     Element::x(ring, i, static_cast<Exponent>(pn1 * ring.p())), rhs);
  }
  for (int s = 1; s <= n; ++s) {
    const Element lhs = power_operation(pn1, mui_invariant(ring, s));
    if (s == n) {
      ctx.rec.zero("P^" + std::to_string(pn1) + " M" + std::to_string(n) + " (unstable)", lhs);
      continue;
    }
    // Substitute the fundamental equation into the last row of E(s).
    Element rhs(ring);
    for (int r = 0; r < n; ++r) {
      VariableMatrix E = matrix_E(ring, s);
      E.rows.back() = MatrixRow::powers(r);
      rhs += coef[r] * determinant(ring, E);
    }
    ctx.rec.identity("P^" + std::to_string(pn1) + " M" + std::to_string(s), rhs, lhs);
    // The substituted determinants are M_r's, so the result is an S(V*)-combination of them.
    DegreeSpan span(monomial_basis(ring, total_degree(lhs).value));
    bool in_module = lhs.is_zero();
    if (!in_module) {
      try {
        decompose(lhs);
        in_module = true;
      } catch (const std::exception&) {
      }
    }
    ctx.rec.check("P^" + std::to_string(pn1) + " M" + std::to_string(s) + " in module of M_r",
                  "decomposes", in_module ? "decomposes" : to_string(lhs), in_module);
  }
  return "s = 1..n";
}

std::string check_p2(Context& ctx) {
  const Ring& ring = ctx.ring;
  const Element L = dickson_L(ring);
  const std::uint64_t degL = total_degree(L).value;
  ctx.rec.check("L_n essential", "true", is_essential(L) ? "true" : "false", is_essential(L));
  const auto closure = steenrod_closure(L, ctx.D());
  for (std::uint64_t d = 0; d <= ctx.D(); ++d) {
    const DegreeSpan ess = ess_basis(ring, d).total;
    DegreeSpan principal(monomial_basis(ring, d));
    std::uint64_t free_count = 0;
    if (d >= degL) {
      const auto multipliers = monomial_basis(ring, d - degL);
      for (const Monomial& m : multipliers->monomials) {
        principal.insert(L * Element::from_monomial(ring, m));
        ++free_count;
      }
    }
    const std::string tag = "d=" + std::to_string(d);
    ctx.rec.spans(tag + " Ess = L_n S(V*)", principal, ess);
    ctx.rec.check(tag + " rank", "free count " + std::to_string(free_count),
                  "dim " + std::to_string(ess.rank()), ess.rank() == free_count);
    ctx.rec.spans(tag + " closure of L_n", ess, closure[d]);
  }
  return degree_range(ctx.D());
}

// ---------------------------------------------------------------------------
// Randomized properties

std::uint64_t random_degree(Context& ctx, std::uint64_t cap = 12) {
  std::uniform_int_distribution<std::uint64_t> pick(0, std::min(ctx.D(), cap));
  return pick(ctx.rng);
}

Element random_nonhomogeneous(Context& ctx) {
  return random_element(ctx.ring, random_degree(ctx), ctx.rng) +
         random_element(ctx.ring, random_degree(ctx), ctx.rng);
}

std::string check_bockstein_squared(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const Element y = random_nonhomogeneous(ctx);
    ctx.rec.tally("beta beta (" + to_string(y) + ")", Element(ctx.ring), bockstein(bockstein(y)));
  }
  ctx.rec.close_tally("beta beta = 0");
  return std::to_string(ctx.config.random_cases) + " random elements";
}

std::string check_cartan(Context& ctx) {
  const bool odd = ctx.ring.has_exterior();
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const std::uint64_t du = random_degree(ctx, 8), dv = random_degree(ctx, 8);
    const Element u = random_element(ctx.ring, du, ctx.rng);
    const Element v = random_element(ctx.ring, dv, ctx.rng);
    std::uniform_int_distribution<std::uint64_t> pick_k(0, (du + dv) / (odd ? 2 : 1) + 1);
    const std::uint64_t m = pick_k(ctx.rng);
    Element sum(ctx.ring);
    for (std::uint64_t i = 0; i <= m; ++i) sum += power_operation(i, u) * power_operation(m - i, v);
    const std::string args = "(" + to_string(u) + ")(" + to_string(v) + ")";
    ctx.rec.tally("P^" + std::to_string(m) + args, sum, power_operation(m, u * v));
    if (odd) {
      const Element sign_u = (du % 2 == 0) ? u : -u;
      ctx.rec.tally("beta" + args, bockstein(u) * v + sign_u * bockstein(v), bockstein(u * v));
    }
  }
  ctx.rec.close_tally(odd ? "Cartan formula for P^k and beta" : "Cartan formula for Sq^k");
  return std::to_string(ctx.config.random_cases) + " random pairs";
}

std::string check_graded_commutativity(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const std::uint64_t du = random_degree(ctx), dv = random_degree(ctx);
    const Element u = random_element(ctx.ring, du, ctx.rng);
    const Element v = random_element(ctx.ring, dv, ctx.rng);
    const Element vu = v * u;
    ctx.rec.tally("(" + to_string(u) + ")(" + to_string(v) + ")", (du * dv) % 2 == 0 ? vu : -vu, u * v);
  }
  ctx.rec.close_tally("uv = (-1)^{|u||v|} vu");
  return std::to_string(ctx.config.random_cases) + " random pairs";
}

std::string check_ring_axioms(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const Element u = random_nonhomogeneous(ctx);
    const Element v = random_nonhomogeneous(ctx);
    const Element w = random_nonhomogeneous(ctx);
    const std::string args = "(" + to_string(u) + ")(" + to_string(v) + ")(" + to_string(w) + ")";
    ctx.rec.tally("assoc " + args, (u * v) * w, u * (v * w));
    ctx.rec.tally("distrib " + args, u * v + u * w, u * (v + w));
  }
  ctx.rec.close_tally("associativity and distributivity");
  return std::to_string(ctx.config.random_cases) + " random triples";
}

std::string check_adjugate(Context& ctx) {
  const Ring& ring = ctx.ring;
  const int n = ctx.n();
  const Element L = dickson_L(ring);
  std::vector<std::vector<Element>> g(n + 1, std::vector<Element>(n + 1, Element(ring)));
  for (int s = 1; s <= n; ++s) {
    for (int i = 1; i <= n; ++i) g[s][i] = gamma(ring, s, i);
  }
  // sum_i (-1)^{s+i} gamma_{s,i} x_i^{p^{t-1}}
  auto column_sum = [&](int s, int t) {
    Element sum(ring);
    for (int i = 1; i <= n; ++i) {
      const Element term = g[s][i] * Element::x(ring, i, static_cast<Exponent>(ipow(ring.p(), t - 1)));
      sum = (s + i) % 2 == 0 ? sum + term : sum - term;
    }
    return sum;
  };
  std::vector<std::vector<Element>> sums(n + 1, std::vector<Element>(n + 1, Element(ring)));
  for (int s = 1; s <= n; ++s) {
    for (int t = 1; t <= n; ++t) {
      sums[s][t] = column_sum(s, t);
      ctx.rec.identity("s=" + std::to_string(s) + " t=" + std::to_string(t),
                       s == t ? L : Element(ring), sums[s][t]);
    }
  }
  // Random linear combinations over t.
  std::uniform_int_distribution<int> pick_s(1, n);
  std::uniform_int_distribution<Scalar> pick_c(0, ring.p() - 1);
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const int s = pick_s(ctx.rng);
    Element lhs(ring);
    Scalar cs = 0;
    std::string label = "s=" + std::to_string(s) + " c=";
    for (int t = 1; t <= n; ++t) {
      const Scalar c = pick_c(ctx.rng);
      label += std::to_string(c);
      lhs += sums[s][t].scaled(c);
      if (t == s) cs = c;
    }
    ctx.rec.tally(label, L.scaled(cs), lhs);
  }
  ctx.rec.close_tally("random column combinations");
  return "all (s,t) and " + std::to_string(ctx.config.random_cases) + " random combinations";
}

std::string check_instability(Context& ctx) {
  const Ring& ring = ctx.ring;
  const bool odd = ring.has_exterior();
  const std::uint64_t step = odd ? 2 * (ring.p() - 1) : 1;
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const std::uint64_t d = random_degree(ctx);
    const Element y = random_element(ring, d, ctx.rng);
    const std::string arg = "(" + to_string(y) + ")";
    // Smallest k with 2k > d (k > d at p = 2), plus a random offset.
    std::uniform_int_distribution<std::uint64_t> offset(0, 3);
    const std::uint64_t unstable = (odd ? d / 2 + 1 : d + 1) + offset(ctx.rng);
    ctx.rec.tally("P^" + std::to_string(unstable) + arg, Element(ring), power_operation(unstable, y));
    std::uniform_int_distribution<std::uint64_t> pick_k(0, odd ? d / 2 : d);
    const std::uint64_t m = pick_k(ctx.rng);
    const Element image = power_operation(m, y);
    const TotalDegree deg = total_degree(image);
    const bool shifted = deg.kind == DegreeKind::Zero ||
                         (deg.is_homogeneous() && deg.value == d + m * step);
    ctx.rec.tally("degree of P^" + std::to_string(m) + arg, Element(ring),
                  shifted ? Element(ring) : image);
    if (odd) {
      const TotalDegree bdeg = total_degree(bockstein(y));
      const bool ok = bdeg.kind == DegreeKind::Zero || (bdeg.is_homogeneous() && bdeg.value == d + 1);
      ctx.rec.tally("degree of beta" + arg, Element(ring), ok ? Element(ring) : bockstein(y));
    } else {
      ctx.rec.tally("Sq^d" + arg, y * y, power_operation(d, y));
    }
  }
  ctx.rec.close_tally(odd ? "instability and degree shifts" : "instability, degree shifts, Sq^d y = y^2");
  return std::to_string(ctx.config.random_cases) + " random elements";
}

std::string check_restriction_naturality(Context& ctx) {
  const Ring& ring = ctx.ring;
  const bool odd = ring.has_exterior();
  const auto subgroups = enumerate_maximal_subgroups(ring);
  std::vector<RestrictionMap> maps;
  for (const auto& h : subgroups) maps.emplace_back(ring, h);
  std::uniform_int_distribution<std::size_t> pick_h(0, maps.size() - 1);
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const RestrictionMap& res = maps[pick_h(ctx.rng)];
    const std::uint64_t d = random_degree(ctx, 10);
    const Element u = random_element(ring, d, ctx.rng);
    const Element v = random_nonhomogeneous(ctx);
    std::uniform_int_distribution<std::uint64_t> pick_k(0, d / (odd ? 2 : 1) + 1);
    const std::uint64_t m = pick_k(ctx.rng);
    const std::string arg = "(" + to_string(u) + ")";
    ctx.rec.tally("res P^" + std::to_string(m) + arg, power_operation(m, res(u)), res(power_operation(m, u)));
    if (odd) ctx.rec.tally("res beta" + arg, bockstein(res(u)), res(bockstein(u)));
    ctx.rec.tally("res product" + arg, res(u) * res(v), res(u * v));
  }
  ctx.rec.close_tally("restriction is a ring map commuting with Steenrod operations");
  return std::to_string(ctx.config.random_cases) + " random elements and subgroups";
}

std::string check_roundtrip(Context& ctx) {
  for (std::size_t k = 0; k < ctx.config.random_cases; ++k) {
    const Element y = random_nonhomogeneous(ctx);
    ctx.rec.tally(to_string(y), y, parse_element(ctx.ring, to_string(y)));
  }
  ctx.rec.close_tally("parse(print(y)) = y");
  return std::to_string(ctx.config.random_cases) + " random elements";
}

// ---------------------------------------------------------------------------

enum class Applies { Odd, Two, Any };

struct ClaimEntry {
  std::string id;
  Applies applies;
  std::function<std::string(Context&)> run;
};

const std::vector<ClaimEntry>& registry() {
  static const std::vector<ClaimEntry> claims = {
      {"coroll:MnS", Applies::Odd, check_MnS},
      {"coroll:jointAnn2", Applies::Odd, check_jointAnn2},
      {"eq:MnST", Applies::Odd, check_MnST},
      {"eq:betaMns", Applies::Odd, check_betaMns},
      {"eq:rPMnS", Applies::Odd, check_rPMnS},
      {"lemma:EssSquared", Applies::Odd, check_EssSquared},
      {"lemma:Mns", Applies::Odd, check_Mns},
      {"lemma:SteenrodMnS.1", Applies::Odd, check_SteenrodMnS_1},
      {"lemma:SteenrodMnS.2", Applies::Odd, check_SteenrodMnS_2},
      {"lemma:SteenrodMnS.3", Applies::Odd, check_SteenrodMnS_3},
      {"lemma:SteenrodMnS.4", Applies::Odd, check_SteenrodMnS_4},
      {"lemma:SteenrodMnS.5", Applies::Odd, check_SteenrodMnS_5},
      {"lemma:eqnLn", Applies::Any, check_eqnLn},
      {"lemma:jointAnn", Applies::Odd, check_jointAnn},
      {"lemma:p2", Applies::Two, check_p2},
      {"prop:adjugate", Applies::Any, check_adjugate},
      {"prop:bockstein-squared", Applies::Odd, check_bockstein_squared},
      {"prop:cartan", Applies::Any, check_cartan},
      {"prop:graded-commutativity", Applies::Any, check_graded_commutativity},
      {"prop:instability", Applies::Any, check_instability},
      {"prop:restriction-naturality", Applies::Any, check_restriction_naturality},
      {"prop:ring-axioms", Applies::Any, check_ring_axioms},
      {"prop:text-roundtrip", Applies::Any, check_roundtrip},
      {"rk:fundamental", Applies::Odd, check_fundamental},
      {"thm:Steenrod", Applies::Odd, check_Steenrod},
      {"thm:free", Applies::Odd, check_free},
  };
  return claims;
}

bool applies(Applies a, std::uint32_t p) {
  return a == Applies::Any || (a == Applies::Two) == (p == 2);
}

}  // namespace

const std::vector<std::string>& known_claims() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> out;
    for (const auto& c : registry()) out.push_back(c.id);
    return out;
  }();
  return ids;
}

std::vector<std::string> applicable_claims(std::uint32_t p) {
  std::vector<std::string> out;
  for (const auto& c : registry()) {
    if (applies(c.applies, p)) out.push_back(c.id);
  }
  return out;
}

void check_resources(const VerifyConfig& config) {
  const PrimeField field(config.p);
  const int max_rank = field.is_two() ? 6 : 4;
  if (config.n < 1 || config.n > max_rank) {
    throw ResourceError("rank " + std::to_string(config.n) + " outside the supported range 1.." +
                        std::to_string(max_rank) + " for p = " + std::to_string(config.p));
  }
  if (ipow(config.p, config.n) > 4096) {
    throw ResourceError("p^n = " + std::to_string(ipow(config.p, config.n)) + " exceeds 4096");
  }
  if (config.max_degree > 200) throw ResourceError("max degree exceeds 200");
  const auto dim = monomial_count(Ring(field, config.n), config.max_degree);
  if (dim > 6000) {
    throw ResourceError("degree " + std::to_string(config.max_degree) + " has " + std::to_string(dim) +
                        " monomials; the cap is 6000");
  }
}

VerificationReport verify(std::string_view claim, const VerifyConfig& config) {
  const auto it = std::find_if(registry().begin(), registry().end(),
                               [&](const ClaimEntry& c) { return c.id == claim; });
  if (it == registry().end()) throw UsageError("unknown claim '" + std::string(claim) + "'");
  if (!applies(it->applies, config.p)) {
    throw UsageError("claim '" + std::string(claim) + "' does not apply at p = " + std::to_string(config.p));
  }
  check_resources(config);

  VerificationReport report;
  report.claim = it->id;
  report.p = config.p;
  report.n = config.n;
  report.degree_bound = config.max_degree;
  Recorder rec(report.cases);
  // Seed per claim so a filtered run reproduces the full run.
  std::mt19937_64 rng(config.seed ^ std::hash<std::string>{}(it->id));
  Context ctx{config, Ring(config.p, config.n), rec, rng};
  const auto start = std::chrono::steady_clock::now();
  try {
    report.coverage = it->run(ctx);
  } catch (const ResourceError&) {
    throw;
  } catch (const std::exception& e) {
    rec.check("exception", "no exception", e.what(), false);
  }
  report.runtime_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.passed = std::all_of(report.cases.begin(), report.cases.end(),
                              [](const CaseResult& c) { return c.pass; });
  return report;
}

std::vector<VerificationReport> verify_all(const VerifyConfig& config,
                                           const std::vector<std::string>& claims,
                                           unsigned threads) {
  check_resources(config);
  std::vector<std::string> ids = claims.empty() ? applicable_claims(config.p) : claims;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  for (const auto& id : ids) {
    if (std::find(known_claims().begin(), known_claims().end(), id) == known_claims().end()) {
      throw UsageError("unknown claim '" + id + "'");
    }
  }
  std::vector<VerificationReport> reports(ids.size());
  if (threads <= 1) {
    for (std::size_t i = 0; i < ids.size(); ++i) reports[i] = verify(ids[i], config);
    return reports;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) reports[i] = verify(ids[i], config);
  };
  std::vector<std::future<void>> pool;
  for (unsigned t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
  for (auto& f : pool) f.get();
  return reports;
}

namespace {

nlohmann::json report_json(const VerificationReport& r) {
  nlohmann::json cases = nlohmann::json::array();
  for (const CaseResult& c : r.cases) {
    cases.push_back({{"id", c.id}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  }
  return {{"claim", r.claim},
          {"p", r.p},
          {"n", r.n},
          {"degree_bound", r.degree_bound},
          {"status", r.passed ? "pass" : "fail"},
          {"coverage", r.coverage},
          {"cases", std::move(cases)},
          {"runtime_ms", r.runtime_ms}};
}

}  // namespace

std::string to_json(const VerificationReport& report) { return report_json(report).dump(2); }

std::string to_json(const std::vector<VerificationReport>& reports) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : reports) out.push_back(report_json(r));
  return out.dump(2);
}

std::string to_text(const std::vector<VerificationReport>& reports) {
  std::ostringstream out;
  for (const auto& r : reports) {
    std::size_t passed = 0;
    for (const auto& c : r.cases) passed += c.pass ? 1 : 0;
    out << (r.passed ? "PASS " : "FAIL ") << r.claim << "  p=" << r.p << " n=" << r.n
        << " D=" << r.degree_bound << "  " << passed << "/" << r.cases.size() << " cases  "
        << r.coverage << "  " << static_cast<long long>(r.runtime_ms) << " ms\n";
  }
  for (const auto& r : reports) {
    for (const auto& c : r.cases) {
      if (c.pass) continue;
      out << "  " << r.claim << " [" << c.id << "]\n    expected: " << c.expected
          << "\n    actual:   " << c.actual << "\n";
    }
  }
  return out.str();
}

}  // namespace mui
