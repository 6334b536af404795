#include "ekr/constructions.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "ekr/finite_field.hpp"
#include "ekr/rational.hpp"

namespace ekr {

namespace {

using Affine = AffineElement;
using json = nlohmann::json;

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string num(std::uint64_t v) { return std::to_string(v); }

NamedSubgroup named(std::string role, std::string label, std::vector<Permutation> gens, std::uint64_t order) {
  NamedSubgroup s;
  s.role = std::move(role);
  s.label = std::move(label);
  s.generators = std::move(gens);
  s.order = order;
  return s;
}

NamedSubgroup named_set(std::string role, std::string label, std::vector<Permutation> elements) {
  NamedSubgroup s;
  s.role = std::move(role);
  s.label = std::move(label);
  s.order = elements.size();
  s.elements = std::move(elements);
  s.is_set = true;
  return s;
}

template <GroupElement E>
std::vector<Permutation> realize_all(const CosetAction<E>& ca, const std::vector<E>& xs) {
  std::vector<Permutation> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(ca.realize(x));
  return out;
}

json field_json(const FiniteField& f) {
  return {{"p", f.characteristic()}, {"k", f.degree()}, {"modulus", f.modulus()}};
}

json mat_json(const Mat2& m) { return json::array({m.a(), m.b(), m.c(), m.d()}); }

json affine_json(const Affine& a) { return {{"shift", a.shift_vector()}, {"linear", a.linear_part()}}; }

json affine_carrier(const FiniteField& f, std::size_t dim, const std::vector<Affine>& gens) {
  json g = json::array();
  for (const auto& x : gens) g.push_back(affine_json(x));
  return {{"type", "affine"}, {"field", field_json(f)}, {"dim", dim}, {"generators", g}};
}

json mat_carrier(const FiniteField& f, bool projective, const std::vector<Mat2>& gens) {
  json g = json::array();
  for (const auto& x : gens) g.push_back(mat_json(x));
  return {{"type", projective ? "projective-matrix2" : "matrix2"}, {"field", field_json(f)}, {"generators", g}};
}

Affine translation1(const FiniteField& f, FieldValue b) {
  const std::array<FieldValue, 1> v{b};
  return Affine::translation(f, v);
}

Affine scaling1(const FiniteField& f, FieldValue a) {
  const std::array<FieldValue, 1> m{a};
  return Affine::linear(f, m);
}

Affine from_mat2(const Mat2& m, std::span<const FieldValue> shift) {
  const std::array<FieldValue, 4> lin{m.a(), m.b(), m.c(), m.d()};
  return Affine(m.field(), shift, lin);
}

Affine linear2(const Mat2& m) {
  const std::array<FieldValue, 2> zero{0, 0};
  return from_mat2(m, zero);
}

Affine translation2(const FiniteField& f, FieldValue x, FieldValue y) {
  const std::array<FieldValue, 2> v{x, y};
  return Affine::translation(f, v);
}

std::vector<Permutation> projective_images(const std::vector<Mat2>& ms) {
  std::vector<Permutation> out;
  for (const auto& m : ms) out.push_back(projective_action(m));
  return out;
}

// upper/lower unipotents plus the torus; SL(2,q) for every q
std::vector<Mat2> sl2_generators(const FiniteField& f, bool projective) {
  std::vector<Mat2> gens{Mat2(f, 1, 1, 0, 1, projective), Mat2(f, 1, 0, 1, 1, projective)};
  if (f.degree() > 1) {
    const FieldValue g = f.generator();
    gens.push_back(Mat2::diagonal(f, g, f.inv(g), projective));
  }
  return gens;
}

bool pairwise_intersecting(const std::vector<Permutation>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (!intersects(s[i], s[j])) return false;
    }
  }
  return true;
}

void require_prime(std::uint64_t p, const char* what) {
  if (!is_prime(p)) throw InvalidArgument(std::string(what) + " = " + num(p) + " is not prime");
}

void check_degree(const ConstructionResult& r) {
  if (const auto* m = r.metric("degree"); m && m->value != num(r.action.degree())) {
    throw InternalError(r.name + ": built degree " + num(r.action.degree()) + " but expected " + m->value);
  }
}

void finish(ConstructionResult& r) {
  if (r.group_order) r.stabilizer_order = *r.group_order / r.action.degree();
  check_degree(r);
}

}  // namespace

bool ConstructionResult::has_subgroup(const std::string& role) const {
  return std::any_of(subgroups.begin(), subgroups.end(), [&](const auto& s) { return s.role == role; });
}

const NamedSubgroup& ConstructionResult::subgroup(const std::string& role) const {
  for (const auto& s : subgroups) {
    if (s.role == role) return s;
  }
  throw InvalidArgument(name + " has no subgroup with role '" + role + "'");
}

const ExpectedMetric* ConstructionResult::metric(const std::string& metric_name) const {
  for (const auto& m : metrics) {
    if (m.name == metric_name) return &m;
  }
  return nullptr;
}

// -- AGL(1, q^2) on the cosets of AGL(1, q) ------------------------------------

ConstructionResult build_nobo(std::uint32_t p, std::uint32_t d, std::size_t cap) {
  require_prime(p, "p");
  if (d == 0) throw InvalidArgument("d must be positive");
  const std::uint64_t q = ipow(p, d);
  if (q * q > kMaxFieldOrder) throw InvalidArgument("q^2 = " + num(q * q) + " exceeds the field cap");
  const std::uint64_t group_order = q * q * (q * q - 1);
  if (group_order > cap) throw CapExceeded("AGL(1," + num(q * q) + ") has order " + num(group_order), 0);

  const auto f = make_field(p, 2 * d);
  const FieldValue g = f.generator();
  const FieldValue gamma = f.pow(g, q + 1);  // generates the subfield's unit group
  const Affine id(f, 1);

  std::vector<Affine> translations;
  for (std::uint32_t i = 0; i < 2 * d; ++i) translations.push_back(translation1(f, static_cast<FieldValue>(ipow(p, i))));

  std::vector<Affine> g_gens = translations;
  g_gens.push_back(scaling1(f, g));

  std::vector<Affine> h_gens;
  for (std::uint32_t i = 0; i < d; ++i) h_gens.push_back(translation1(f, f.pow(gamma, i)));
  h_gens.push_back(scaling1(f, gamma));
  const Group<Affine> h(id, h_gens);

  std::vector<Affine> s_gens = translations;
  s_gens.push_back(scaling1(f, gamma));
  const Group<Affine> s(id, s_gens);

  const std::vector<Affine> k_gens{scaling1(f, f.pow(g, q - 1))};
  const Group<Affine> k(id, k_gens);

  if (h.order(cap) != q * (q - 1)) throw InternalError("nobo: |H| != q(q-1)");
  if (s.order(cap) != q * q * (q - 1)) throw InternalError("nobo: |S| != q^2(q-1)");
  if (k.order(cap) != q + 1) throw InternalError("nobo: |K| != q+1");

  const CosetAction<Affine> ca(g_gens, h, kMaxDegree, cap);
  ConstructionResult r;
  r.name = "nobo";
  r.params = {{"p", p}, {"d", d}};
  r.action = Action(ca.degree(), ca.generator_images());
  r.group_order = group_order;
  r.carrier = affine_carrier(f, 1, g_gens);
  r.subgroups.push_back(named("H", "E:E^x", realize_all(ca, h_gens), h.order()));
  r.subgroups.push_back(named("S", "F:E^x", realize_all(ca, s_gens), s.order()));
  r.subgroups.push_back(named("K", "Z_(q+1) < F^x", realize_all(ca, k_gens), k.order()));

  // K meets E^x in {1,-1} when q is odd, so it is regular on [G:S] only for
  // even q; the transversal {(0, g^i) : i <= q} of E^x in F^x always is
  const CosetAction<Affine> cs(g_gens, s, kMaxDegree, cap);
  AuxiliaryAction aux{"G on [G:S]", Action(cs.degree(), cs.generator_images()), {}};
  aux.subgroups.push_back(named("K", "Z_(q+1) < F^x", realize_all(cs, k_gens), k.order()));
  std::vector<Affine> transversal;
  for (std::uint64_t i = 0; i <= q; ++i) transversal.push_back(scaling1(f, f.pow(g, i)));
  aux.subgroups.push_back(named_set("C", "{(0, g^i) : 0 <= i <= q}", realize_all(cs, transversal)));
  r.auxiliary.push_back(std::move(aux));

  r.metrics = {
      {"degree", num(q * (q + 1)), "q(q+1)"},
      {"stabilizer_order", num(q * (q - 1)), "|E:E^x| = q(q-1)"},
      {"S_order", num(q * q * (q - 1)), "|F:E^x| = q^2(q-1)"},
      {"S_over_H", num(q), "q"},
      {"rho", num(q), "S is a maximum intersecting set, rho = q"},
      {"K_regular_on_G:S", q % 2 == 0 ? "true" : "false", "K meets E^x in {1,-1} when q is odd"},
  };
  finish(r);
  return r;
}

// -- AGL(d,p) on the cosets of a dihedral subgroup ------------------------------

ConstructionResult build_agl_example(std::uint32_t p, std::uint32_t d, std::size_t cap) {
  require_prime(p, "p");
  if (p == 2) throw InvalidArgument("agl-example needs an odd prime (-I must be an involution)");
  if (d < 2 || d > kMaxAffineDim) throw InvalidArgument("agl-example needs 2 <= d <= 4");
  const auto f = make_field(p, 1);
  const Affine id(f, d);
  auto identity_matrix = [&] {
    std::vector<FieldValue> m(d * d, 0);
    for (std::size_t i = 0; i < d; ++i) m[i * d + i] = 1;
    return m;
  };
  std::vector<FieldValue> e1(d, 0);
  e1[0] = 1;

  std::vector<Affine> g_gens{Affine::translation(f, e1)};
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      auto m = identity_matrix();
      m[i * d + j] = 1;
      g_gens.push_back(Affine::linear(f, m));
    }
  }
  {
    auto m = identity_matrix();
    m[0] = f.generator();
    g_gens.push_back(Affine::linear(f, m));
  }

  auto minus_i = identity_matrix();
  for (std::size_t i = 0; i < d; ++i) minus_i[i * d + i] = f.neg(1);
  const Affine x = Affine::linear(f, minus_i);
  const Affine y(f, e1, minus_i);
  const std::vector<Affine> h_gens{x, y};
  const Group<Affine> h(id, h_gens);

  std::vector<Affine> s_gens;
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<FieldValue> e(d, 0);
    e[i] = 1;
    s_gens.push_back(Affine::translation(f, e));
  }
  s_gens.push_back(x);
  const Group<Affine> s(id, s_gens);

  std::uint64_t gl = 1;
  for (std::uint32_t i = 0; i < d; ++i) gl *= ipow(p, d) - ipow(p, i);
  const std::uint64_t pd = ipow(p, d);
  if (h.order(cap) != 2 * p) throw InternalError("agl-example: |<x,y>| != 2p");
  if (s.order(cap) != 2 * pd) throw InternalError("agl-example: |S| != 2p^d");

  const CosetAction<Affine> ca(g_gens, h, kMaxDegree, cap);
  ConstructionResult r;
  r.name = "agl-example";
  r.params = {{"p", p}, {"d", d}};
  r.action = Action(ca.degree(), ca.generator_images());
  r.group_order = pd * gl;
  r.carrier = affine_carrier(f, d, g_gens);
  r.subgroups.push_back(named("H", "<x,y> = D_2p", realize_all(ca, h_gens), h.order()));
  r.subgroups.push_back(named("S", "V:<x>", realize_all(ca, s_gens), s.order()));
  r.metrics = {
      {"degree", num(pd * gl / (2 * p)), "|AGL(d,p)| / 2p"},
      {"stabilizer_order", num(2 * p), "|G_w| = 2p"},
      {"S_order", num(2 * pd), "|S| = 2p^d"},
      {"S_over_H", num(pd / p), "p^(d-1)"},
  };
  finish(r);
  return r;
}

// -- wreath products ------------------------------------------------------------

WreathElement WreathElement::operator*(const WreathElement& o) const {
  const std::size_t l = f.size();
  if (o.f.size() != l) throw InvalidArgument("wreath elements of different length");
  WreathElement r;
  r.f.reserve(l);
  for (std::size_t j = 0; j < l; ++j) r.f.push_back(f[j] * o.f[(j + m) % l]);
  r.m = static_cast<std::uint32_t>((m + o.m) % l);
  return r;
}

WreathElement WreathElement::inverse() const {
  // (f;m)^-1 = (j -> f(j-m)^-1; -m)
  const std::size_t l = f.size();
  WreathElement r;
  r.m = static_cast<std::uint32_t>((l - m) % l);
  r.f.reserve(l);
  for (std::size_t j = 0; j < l; ++j) r.f.push_back(f[(j + l - m) % l].inverse());
  return r;
}

std::size_t WreathElement::hash() const noexcept {
  std::size_t h = m;
  for (const auto& x : f) h = h * 1000003u ^ x.hash();
  return h;
}

Permutation wreath_realize(const WreathElement& w, std::size_t base_degree) {
  const std::size_t l = w.f.size();
  for (const auto& x : w.f) {
    if (x.degree() != base_degree) throw InvalidArgument("wreath coordinate of wrong degree");
  }
  const std::uint64_t n = ipow(base_degree, static_cast<std::uint32_t>(l));
  if (n > kMaxDegree) throw CapExceeded("product action has " + num(n) + " points", 0);
  std::vector<Point> im(n);
  std::vector<std::size_t> tup(l), out(l);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t t = idx;
    for (std::size_t j = l; j-- > 0;) {
      tup[j] = t % base_degree;
      t /= base_degree;
    }
    // coordinate j moves to j+m and is acted on by f(j)
    for (std::size_t j = 0; j < l; ++j) out[(j + w.m) % l] = w.f[j][tup[j]];
    std::size_t o = 0;
    for (std::size_t j = 0; j < l; ++j) o = o * base_degree + out[j];
    im[idx] = static_cast<Point>(o);
  }
  return Permutation::from_images(std::span<const Point>(im));
}

WreathLift wreath_product(const Action& base, std::uint32_t l,
                          const std::vector<std::vector<Permutation>>& subgroups) {
  if (!is_prime(l)) throw InvalidArgument("wreath length " + num(l) + " is not prime");
  const std::size_t n = base.degree();
  const Permutation one(n);
  auto lift = [&](const std::vector<Permutation>& gens) {
    std::vector<Permutation> out;
    for (const auto& g : gens) {
      WreathElement w{std::vector<Permutation>(l, one), 0};
      w.f[0] = g;
      out.push_back(wreath_realize(w, n));
    }
    out.push_back(wreath_realize(WreathElement{std::vector<Permutation>(l, one), 1}, n));
    return out;
  };
  WreathLift r{Action(static_cast<std::size_t>(ipow(n, l)), lift(base.generators())), {}};
  for (const auto& s : subgroups) r.lifted.push_back(lift(s));
  return r;
}

// -- PGL(2,2^f) on pairs of projective points --------------------------------------

namespace {

struct PairAction {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::vector<std::size_t>> index;
};

PairAction pair_indexing(std::size_t n) {
  PairAction pa;
  pa.index.assign(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      pa.index[i][j] = pa.index[j][i] = pa.pairs.size();
      pa.pairs.emplace_back(i, j);
    }
  }
  return pa;
}

Permutation on_pairs(const PairAction& pa, const Permutation& g) {
  std::vector<Point> im(pa.pairs.size());
  for (std::size_t k = 0; k < pa.pairs.size(); ++k) {
    im[k] = static_cast<Point>(pa.index[g[pa.pairs[k].first]][g[pa.pairs[k].second]]);
  }
  return Permutation::from_images(std::span<const Point>(im));
}

struct AscParts {
  Action action;
  std::vector<Permutation> s_gens;
  std::vector<Permutation> stab_gens;
  std::uint64_t q;
};

AscParts asc_parts(std::uint32_t f_exp) {
  if (f_exp < 2 || f_exp > 4) throw InvalidArgument("asc needs 2 <= f <= 4 (q <= 16)");
  const auto f = make_field(2, f_exp);
  const FieldValue gamma = f.generator();
  const Mat2 s = Mat2::diagonal(f, 1, gamma);
  const Mat2 u(f, 1, 1, 0, 1);
  const Mat2 r(f, 0, 1, 1, 0);
  const auto pa = pair_indexing(projective_point_count(f));
  auto lift = [&](const Mat2& m) { return on_pairs(pa, projective_action(m)); };
  return AscParts{Action(pa.pairs.size(), {lift(s), lift(u), lift(r)}), {lift(u), lift(s)}, {lift(s), lift(r)},
                  f.order()};
}

}  // namespace

ConstructionResult build_asc(std::uint32_t f_exp) {
  auto parts = asc_parts(f_exp);
  const std::uint64_t q = parts.q;
  ConstructionResult r;
  r.name = "asc";
  r.params = {{"f", f_exp}};
  r.action = std::move(parts.action);
  r.group_order = q * (q * q - 1);
  r.carrier = {{"type", "permutation"}, {"note", "PGL(2,q) induced on unordered pairs of PG(1,q)"}};
  r.subgroups.push_back(named("H", "T_alpha = <s,r> = D_2(q-1)", parts.stab_gens, 2 * (q - 1)));
  r.subgroups.push_back(named("S", "parabolic {(1 a; 0 b)}", parts.s_gens, q * (q - 1)));
  r.metrics = {
      {"degree", num(q * (q + 1) / 2), "pairs of distinct points of PG(1,q)"},
      {"stabilizer_order", num(2 * (q - 1)), "|T_alpha| = 2(q-1)"},
      {"S_order", num(q * (q - 1)), "q(q-1)"},
      {"rho_lower_bound", Rational(q, 2).str(), "|S|/|T_alpha| = q/2"},
      {"rho_remark", num(q), "stated value q, inconsistent with the q/2 bound; measured, not asserted"},
  };
  finish(r);
  return r;
}

ConstructionResult build_wreath(const std::string& base, std::uint32_t param, std::uint32_t l) {
  Action base_action(1, {});
  std::vector<Permutation> s_gens, stab_gens;
  Rational base_ratio(1);
  std::uint64_t base_order = 0, stab_order = 0;
  if (base == "sym") {
    if (param < 2) throw InvalidArgument("wreath sym needs n >= 2");
    auto sym = symmetric_natural(param);
    base_action = sym.action;
    // S = stabiliser of the last point, generated by the transpositions (i i+1), i < n-2
    for (std::size_t i = 0; i + 2 < param; ++i) {
      std::vector<Point> im(param);
      std::iota(im.begin(), im.end(), Point{0});
      std::swap(im[i], im[i + 1]);
      s_gens.push_back(Permutation::from_images(std::span<const Point>(im)));
    }
    for (std::size_t i = 1; i + 1 < param; ++i) {
      std::vector<Point> im(param);
      std::iota(im.begin(), im.end(), Point{0});
      std::swap(im[i], im[i + 1]);
      stab_gens.push_back(Permutation::from_images(std::span<const Point>(im)));
    }
    base_order = *sym.group_order;
    stab_order = sym.stabilizer_order;
  } else if (base == "asc") {
    auto parts = asc_parts(param);
    base_action = parts.action;
    s_gens = parts.s_gens;
    stab_gens = parts.stab_gens;
    base_ratio = Rational(parts.q, 2);
    base_order = parts.q * (parts.q * parts.q - 1);
    stab_order = 2 * (parts.q - 1);
  } else {
    throw InvalidArgument("unknown wreath base '" + base + "' (expected sym or asc)");
  }
  const std::uint64_t n = base_action.degree();
  if (ipow(n, l) > kMaxDegree) throw CapExceeded("product action has " + num(ipow(n, l)) + " points", 0);
  auto lift = wreath_product(base_action, l, {s_gens, stab_gens});

  ConstructionResult r;
  r.name = "wreath";
  r.params = {{"base", base}, {base == "sym" ? "n" : "f", param}, {"l", l}};
  r.action = std::move(lift.action);
  r.group_order = ipow(base_order, l) * l;
  r.carrier = {{"type", "permutation"}, {"note", "product action on l-tuples, lexicographic index"}};
  r.subgroups.push_back(named("H", "G_w wr Z_l", lift.lifted[1], ipow(stab_order, l) * l));
  const std::uint64_t s_order = base == "sym" ? stab_order : base_ratio.num * stab_order / base_ratio.den;
  r.subgroups.push_back(named("S", "S wr Z_l", lift.lifted[0], ipow(s_order, l) * l));
  Rational bound(1);
  for (std::uint32_t i = 0; i < l; ++i) bound = Rational(bound.num * base_ratio.num, bound.den * base_ratio.den);
  r.metrics = {
      {"degree", num(ipow(n, l)), "|Omega|^l"},
      {"stabilizer_order", num(ipow(stab_order, l) * l), "|G_w|^l * l"},
      {"rho_lower_bound", bound.str(), "(|S|/|G_w|)^l"},
  };
  finish(r);
  return r;
}

// -- affine groups with large intersecting subgroups --------------------------------

namespace {

// First matrix of SL(2,p) in entry-lex order with the given order whose
// closure with `base` has exactly `target` elements.
Mat2 find_completion(const FiniteField& f, const std::vector<Mat2>& base, std::uint64_t order,
                     std::size_t target) {
  const FieldValue q = f.order();
  for (FieldValue a = 0; a < q; ++a) {
    for (FieldValue b = 0; b < q; ++b) {
      for (FieldValue c = 0; c < q; ++c) {
        for (FieldValue d = 0; d < q; ++d) {
          const Mat2 m(f, a, b, c, d);
          if (m.det() != 1 || m.order() != order) continue;
          auto gens = base;
          gens.push_back(m);
          try {
            if (enumerate(Mat2::identity(f), gens, target).size() == target) return m;
          } catch (const CapExceeded&) {
          }
        }
      }
    }
  }
  throw InternalError("no order-" + num(order) + " completion to a group of order " + num(target));
}

struct Table1Linear {
  FiniteField f;
  std::vector<Mat2> gens;  // i, j, completion, extra
  Mat2 i, j;
};

Table1Linear table1_linear(int row) {
  if (row == 1 || row == 2) {
    const auto f = make_field(5, 1);
    const Mat2 i(f, 0, 1, 4, 0), j(f, 2, 0, 0, 3);
    const Mat2 t = find_completion(f, {i, j}, 3, 24);
    std::vector<Mat2> gens{i, j, t};
    if (row == 2) gens.push_back(Mat2(f, 1, 0, 0, 4));
    return {f, gens, i, j};
  }
  if (row == 3 || row == 4) {
    const auto f = make_field(29, 1);
    const FieldValue eta = f.element_of_order(4);
    const Mat2 i(f, 0, 1, f.neg(1), 0), j(f, eta, 0, 0, f.neg(eta));
    const Mat2 u = find_completion(f, {i, j}, 5, 120);
    const FieldValue zeta = f.element_of_order(row == 3 ? 7 : 28);
    return {f, {i, j, u, Mat2::scalar(f, zeta)}, i, j};
  }
  throw InvalidArgument("table1 linear generators exist for rows 1-4 only");
}

ConstructionResult table1_affine_plane(int row, std::size_t cap) {
  const auto lin = table1_linear(row);
  const auto& f = lin.f;
  const Affine id(f, 2);
  const Affine e1 = translation2(f, 1, 0), e2 = translation2(f, 0, 1);

  std::vector<Affine> g_gens{e1, e2};
  for (const auto& m : lin.gens) g_gens.push_back(linear2(m));

  std::vector<Affine> h_gens{e1, linear2(lin.j)};
  std::vector<Affine> k_gens{e1, e2, linear2(lin.i), linear2(lin.j)};
  if (row == 2 || row == 3 || row == 4) {
    h_gens.push_back(linear2(lin.gens[3]));
    k_gens.push_back(linear2(lin.gens[3]));
  }
  const Group<Affine> h(id, h_gens);
  const auto k = std::make_shared<Group<Affine>>(id, k_gens);
  const std::uint64_t x_order = Group<Mat2>(Mat2::identity(f), lin.gens).order(cap);
  const std::uint64_t vq = std::uint64_t{f.order()} * f.order();
  const std::uint64_t group_order = vq * x_order;

  auto ca = std::make_shared<CosetAction<Affine>>(g_gens, h, kMaxDegree, cap);
  ConstructionResult r;
  r.name = "table1";
  r.params = {{"row", row}};
  r.action = Action(ca->degree(), ca->generator_images());
  r.group_order = group_order;
  r.carrier = affine_carrier(f, 2, g_gens);
  r.carrier["linear_generators"] = json::array();
  for (const auto& m : lin.gens) r.carrier["linear_generators"].push_back(mat_json(m));

  static const char* kLabels[][3] = {
      {"F5^2:SL(2,3)", "F5:Z4", "F5^2:Q8"},
      {"F5^2:(SL(2,3):Z2)", "F5:(Z4:Z2)", "F5^2:(Q8:Z2)"},
      {"F29^2:(SL(2,5)xZ7)", "F29:(Z4xZ7)", "F29^2:(Q8xZ7)"},
      {"F29^2:(SL(2,5)oZ28)", "F29:(Z4oZ28)", "F29^2:(Q8oZ28)"},
  };
  const auto* labels = kLabels[row - 1];
  r.carrier["structure"] = labels[0];
  const std::uint64_t h_order = h.order(cap);
  const std::uint64_t k_order = Group<Affine>(id, k_gens).order(cap);
  r.subgroups.push_back(named("H", labels[1], realize_all(*ca, h_gens), h_order));
  r.subgroups.push_back(named("K", labels[2], realize_all(*ca, k_gens), k_order));

  if (row == 3 || row == 4) {
    // too many elements to analyse as permutations: every element of K is
    // tested for a fixed coset Hr (r k r^-1 in H) directly on affine maps
    r.structural_intersecting = [ca, k, cap, name = r.name](const std::string& role) {
      if (role != "K") throw InvalidArgument("structural check is available for K only");
      StructuralResult out;
      out.holds = true;
      for (const auto& x : k->elements(cap)) {
        ++out.checked;
        if (!ca->first_fixed_point(x)) {
          out.holds = false;
          out.counterexample = affine_json(x).dump();
          break;
        }
      }
      return out;
    };
  }

  const std::uint64_t ratio = k_order / h_order;
  r.metrics = {
      {"degree", num(row <= 2 ? 30 : 870), row <= 2 ? "|G|/|H| = 30" : "29*30"},
      {"stabilizer_order", num(group_order / (row <= 2 ? 30 : 870)), "|H|"},
      {"K_over_H", num(row <= 2 ? 10 : 58), row <= 2 ? "|K|/|H| = 10" : "|K|/|H| = 29*2"},
  };
  if (ratio != (row <= 2 ? 10u : 58u) || k_order % h_order != 0) {
    throw InternalError("table1 row " + num(row) + ": |K|/|H| = " + Rational(k_order, h_order).str());
  }
  if (row <= 2) r.metrics.push_back({"rho", "10", "|K|/|H| = |Omega|/3"});
  finish(r);
  return r;
}

ConstructionResult table1_row5(std::size_t cap) {
  const auto f = make_field(3, 1);
  const Affine id(f, 3);
  // f_i -> f_sigma(i) on V = F3^4/<f> with basis f1,f2,f3 and f4 = -(f1+f2+f3)
  auto coords = [&](std::size_t i) -> std::array<FieldValue, 3> {
    if (i == 3) return {2, 2, 2};
    std::array<FieldValue, 3> v{0, 0, 0};
    v[i] = 1;
    return v;
  };
  auto matrix_of = [&](const std::array<std::size_t, 4>& sigma) {
    std::vector<FieldValue> m(9);
    for (std::size_t i = 0; i < 3; ++i) {
      const auto row = coords(sigma[i]);
      for (std::size_t c = 0; c < 3; ++c) m[i * 3 + c] = row[c];
    }
    return Affine::linear(f, m);
  };
  const Affine three_cycle = matrix_of({1, 2, 0, 3});   // (0 1 2)
  const Affine double_swap = matrix_of({1, 0, 3, 2});   // (0 1)(2 3)
  const Affine double_swap2 = matrix_of({2, 3, 0, 1});  // (0 2)(1 3)
  auto t = [&](FieldValue a, FieldValue b, FieldValue c) {
    const std::array<FieldValue, 3> v{a, b, c};
    return Affine::translation(f, v);
  };
  const std::vector<Affine> g_gens{t(1, 0, 0), three_cycle, double_swap};
  const std::vector<Affine> h_gens{t(1, 0, 0), t(0, 1, 0), double_swap};
  const std::vector<Affine> k_gens{t(1, 0, 0), t(0, 1, 0), t(0, 0, 1), double_swap, double_swap2};
  const Group<Affine> h(id, h_gens);
  const Group<Affine> g(id, g_gens);
  const Group<Affine> k(id, k_gens);
  if (g.order(cap) != 324 || h.order(cap) != 18 || k.order(cap) != 108) {
    throw InternalError("table1 row 5: unexpected subgroup orders");
  }

  const CosetAction<Affine> ca(g_gens, h, kMaxDegree, cap);
  ConstructionResult r;
  r.name = "table1";
  r.params = {{"row", 5}};
  r.action = Action(ca.degree(), ca.generator_images());
  r.group_order = 324;
  r.carrier = affine_carrier(f, 3, g_gens);
  r.carrier["structure"] = "F3^3:A4";
  r.subgroups.push_back(named("H", "F3^2:Z2", realize_all(ca, h_gens), 18));
  r.subgroups.push_back(named("K", "F3^3:Z2^2", realize_all(ca, k_gens), 108));
  r.metrics = {
      {"degree", "18", "|G|/|H| = 324/18"},
      {"stabilizer_order", "18", "|F3^2:Z2|"},
      {"K_over_H", "6", "|K|/|H| = 108/18"},
      {"rho", "6", "|K|/|H| = |Omega|/3"},
  };
  finish(r);
  return r;
}

}  // namespace

std::vector<Mat2> table1_linear_generators(int row) { return table1_linear(row).gens; }

ConstructionResult build_table1(int row, std::size_t cap) {
  if (row < 1 || row > 5) throw InvalidArgument("table1 row must be 1..5, got " + num(static_cast<std::uint64_t>(row < 0 ? 0 : row)));
  return row == 5 ? table1_row5(cap) : table1_affine_plane(row, cap);
}

// -- PSL(2,p) on the cosets of a maximal subgroup ---------------------------------

std::string to_string(Psl2Family f) {
  switch (f) {
    case Psl2Family::Borel: return "borel";
    case Psl2Family::DMinus: return "d-minus";
    case Psl2Family::DPlus: return "d-plus";
    case Psl2Family::A4: return "a4";
    case Psl2Family::S4: return "s4";
    case Psl2Family::A5: return "a5";
  }
  return "?";
}

Psl2Family parse_psl2_family(const std::string& s) {
  std::string t;
  for (char c : s) t.push_back(c == '_' ? '-' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (auto f : {Psl2Family::Borel, Psl2Family::DMinus, Psl2Family::DPlus, Psl2Family::A4, Psl2Family::S4,
                 Psl2Family::A5}) {
    if (to_string(f) == t) return f;
  }
  throw InvalidArgument("unknown PSL(2,p) family '" + s + "' (borel, d-minus, d-plus, a4, s4, a5)");
}

bool psl2_family_admissible(std::uint32_t p, Psl2Family family) {
  if (p < 5 || !is_prime(p)) return false;
  switch (family) {
    case Psl2Family::Borel: return true;
    case Psl2Family::DMinus: return p >= 13;
    case Psl2Family::DPlus: return p != 7;
    case Psl2Family::A5: return p % 10 == 1 || p % 10 == 9;
    case Psl2Family::A4: return p % 8 == 3 || p % 8 == 5;
    case Psl2Family::S4: return p % 8 == 1 || p % 8 == 7;
  }
  return false;
}

namespace {

std::uint64_t family_order(std::uint32_t p, Psl2Family family) {
  switch (family) {
    case Psl2Family::Borel: return std::uint64_t{p} * (p - 1) / 2;
    case Psl2Family::DMinus: return p - 1;
    case Psl2Family::DPlus: return p + 1;
    case Psl2Family::A4: return 12;
    case Psl2Family::S4: return 24;
    case Psl2Family::A5: return 60;
  }
  return 0;
}

// matrix of x -> x * c on F_{p^2} = F_p + F_p x, rows are images of the basis
Mat2 multiplication_matrix(const FiniteField& fp, const FiniteField& fq, FieldValue c) {
  const FieldValue p = fp.order();
  const FieldValue r0 = fq.mul(1, c), r1 = fq.mul(p, c);  // index p is the class of x
  return Mat2(fp, r0 % p, r0 / p, r1 % p, r1 / p);
}

}  // namespace

ConstructionResult build_psl2(std::uint32_t p, Psl2Family family, std::size_t cap) {
  if (!is_prime(p) || p < 5) throw InvalidArgument("psl2 needs a prime p >= 5, got " + num(p));
  if (!psl2_family_admissible(p, family)) {
    throw InvalidArgument(to_string(family) + " is not a maximal subgroup of PSL(2," + num(p) + ")");
  }
  const auto f = make_field(p, 1);
  const std::uint64_t g_order = std::uint64_t{p} * (std::uint64_t{p} * p - 1) / 2;
  const auto g_mats = sl2_generators(f, false);
  const auto g_perms = projective_images(g_mats);
  const Permutation one(p + 1);
  const PermGroup g(one, g_perms);
  const FieldValue w = f.generator();

  std::vector<Permutation> h_gens;
  switch (family) {
    case Psl2Family::Borel:
      h_gens = projective_images({Mat2::diagonal(f, w, f.inv(w)), Mat2(f, 1, 0, 1, 1)});
      break;
    case Psl2Family::DMinus:
      h_gens = projective_images({Mat2::diagonal(f, w, f.inv(w)), Mat2(f, 0, 1, f.neg(1), 0)});
      break;
    case Psl2Family::DPlus: {
      const auto fq = make_field(p, 2);
      const FieldValue beta = fq.element_of_order(p + 1);
      FieldValue lambda = 0;
      for (FieldValue c = 1; c < fq.order(); ++c) {
        if (fq.pow(c, p + 1) == fq.neg(1)) {
          lambda = c;
          break;
        }
      }
      const FieldValue fx = fq.pow(p, p);  // image of x under Frobenius
      const Mat2 phi(f, 1, 0, fx % p, fx / p);
      const Mat2 flip = phi * multiplication_matrix(f, fq, lambda);
      if (flip.det() != 1) throw InternalError("d-plus: Frobenius twist has determinant != 1");
      h_gens = projective_images({multiplication_matrix(f, fq, beta), flip});
      break;
    }
    case Psl2Family::A4:
    case Psl2Family::S4:
    case Psl2Family::A5: {
      const std::uint64_t ab = family == Psl2Family::A4 ? 3 : family == Psl2Family::S4 ? 4 : 5;
      const std::size_t target = family_order(p, family);
      const auto& elems = g.elements(cap);
      std::vector<const Permutation*> twos, threes;
      for (const auto& x : elems) {
        const auto o = x.order();
        if (o == 2) twos.push_back(&x);
        if (o == 3) threes.push_back(&x);
      }
      for (const auto* a : twos) {
        for (const auto* b : threes) {
          if ((*a * *b).order() != ab) continue;
          try {
            if (enumerate(one, {*a, *b}, target).size() == target) {
              h_gens = {*a, *b};
              break;
            }
          } catch (const CapExceeded&) {
          }
        }
        if (!h_gens.empty()) break;
      }
      if (h_gens.empty()) throw InternalError("no " + to_string(family) + " subgroup found in PSL(2," + num(p) + ")");
      break;
    }
  }
  const PermGroup h(one, h_gens);
  const std::uint64_t h_order = h.order(cap);
  if (h_order != family_order(p, family)) {
    throw InternalError(to_string(family) + " subgroup has order " + num(h_order));
  }
  const CosetAction<Permutation> ca(g_perms, h, kMaxDegree, cap);
  ConstructionResult r;
  r.name = "psl2";
  r.params = {{"p", p}, {"family", to_string(family)}};
  r.action = Action(ca.degree(), ca.generator_images());
  r.group_order = g_order;
  r.carrier = mat_carrier(f, true, g_mats);
  r.carrier["natural_action_generators"] = json::array();
  for (const auto& x : g_perms) r.carrier["natural_action_generators"].push_back(format_cycles(x));
  r.subgroups.push_back(named("H", to_string(family), realize_all(ca, h_gens), h_order));
  r.metrics = {
      {"degree", num(g_order / h_order), "|PSL(2,p)| / |H|"},
      {"stabilizer_order", num(h_order), "|H|"},
  };
  finish(r);
  return r;
}

// -- PGL(2,q) on the cosets of D_2(q+1) ---------------------------------------------

ConstructionResult build_pglexam(std::uint32_t q, bool psl) {
  const auto [p, k] = prime_power_decomposition(q);
  if (p == 0) throw InvalidArgument("pglexam needs a prime power, got " + num(q));
  if (p == 2) throw InvalidArgument("pglexam needs odd q");
  if (psl && q % 4 != 3) throw InvalidArgument("the PSL(2,q) branch needs q = 3 mod 4, got q = " + num(q));
  const auto f = make_field(static_cast<std::uint32_t>(p), k);
  const auto f2 = make_field(static_cast<std::uint32_t>(p), 2 * k);
  const auto emb = subfield_embedding(f, f2);
  auto down = [&](FieldValue v) -> FieldValue {
    const auto it = std::find(emb.begin(), emb.end(), v);
    if (it == emb.end()) throw InternalError("pglexam: value outside the subfield");
    return static_cast<FieldValue>(it - emb.begin());
  };

  // 2^t exactly divides q-1
  std::uint32_t t = 0;
  for (std::uint32_t m = q - 1; m % 2 == 0; m /= 2) ++t;
  const std::uint64_t two_t = 1ull << t;

  const FieldValue beta = f2.element_of_order(two_t * (q + 1));
  const FieldValue norm = down(f2.pow(beta, q + 1));
  const FieldValue trace = down(f2.add(beta, f2.pow(beta, q)));
  const Mat2 a(f, 0, 1, norm, 0, true);
  const Mat2 b(f, 0, 1, f.neg(norm), trace, true);
  const Group<Mat2> ht(Mat2::identity(f, true), {a, b});
  if (ht.order() != 2 * (q + 1)) throw InternalError("pglexam: |H~| = " + num(ht.order()));

  const FieldValue gamma = f.generator();
  std::vector<Mat2> pgl_gens{Mat2::diagonal(f, gamma, 1, true), Mat2::diagonal(f, 1, gamma, true),
                             Mat2(f, 1, 1, 0, 1, true), Mat2(f, 0, 1, 1, 0, true)};

  // M = index-2^t subgroup of F^x, delta of order 2^t, M~ = union of delta^i M, i < 2^(t-1)
  std::vector<FieldValue> m_tilde;
  const FieldValue delta = f.element_of_order(two_t);
  const FieldValue m_gen = f.pow(gamma, two_t);
  const std::uint64_t m_size = (q - 1) / two_t;
  for (std::uint64_t i = 0; i < two_t / 2; ++i) {
    for (std::uint64_t j = 0; j < m_size; ++j) m_tilde.push_back(f.mul(f.pow(delta, i), f.pow(m_gen, j)));
  }
  std::vector<Mat2> c_mats;
  for (FieldValue av : m_tilde) {
    for (FieldValue bv = 0; bv < q; ++bv) c_mats.push_back(Mat2(f, 1, bv, 0, av, true));
  }

  auto is_square = [&](FieldValue x) { return x != 0 && f.log(x) % 2 == 0; };

  ConstructionResult r;
  std::vector<Mat2> g_gens, h_gens;
  std::uint64_t group_order;
  std::string h_label;
  if (!psl) {
    g_gens = pgl_gens;
    h_gens = {a, b};
    group_order = std::uint64_t{q} * (std::uint64_t{q} * q - 1);
    h_label = "D_2(q+1)";
  } else {
    g_gens = sl2_generators(f, true);
    std::vector<Mat2> h_elems;
    for (const auto& x : ht.elements()) {
      if (is_square(x.det())) h_elems.push_back(x);
    }
    h_gens = Group<Mat2>::from_elements(Mat2::identity(f, true), h_elems).generators();
    group_order = std::uint64_t{q} * (std::uint64_t{q} * q - 1) / 2;
    h_label = "D_(q+1) = H~ n PSL(2,q)";
    for (const auto& c : c_mats) {
      if (!is_square(c.det())) throw InternalError("pglexam: transversal element outside PSL(2,q)");
    }
  }
  const Group<Mat2> h(Mat2::identity(f, true), h_gens);
  const CosetAction<Mat2> ca(g_gens, h);
  r.name = psl ? "pglexam-psl" : "pglexam";
  r.params = {{"q", q}, {"psl", psl}};
  r.action = Action(ca.degree(), ca.generator_images());
  r.group_order = group_order;
  r.carrier = mat_carrier(f, true, g_gens);
  r.carrier["beta"] = {{"field", field_json(f2)}, {"value", beta}, {"order", two_t * (q + 1)}};
  r.carrier["t"] = t;
  r.carrier["m_tilde"] = m_tilde;
  r.subgroups.push_back(named("H", h_label, realize_all(ca, h_gens), h.order()));
  r.subgroups.push_back(named_set("C", "{(1 b; 0 a) : a in M~, b in F}", realize_all(ca, c_mats)));
  r.metrics = {
      {"degree", num(std::uint64_t{q} * (q - 1) / 2), "q(q-1)/2"},
      {"stabilizer_order", num(h.order()), psl ? "q+1" : "2(q+1)"},
      {"C_size", num(c_mats.size()), "q * |M~| = q(q-1)/2"},
      {"max_intersecting", num(h.order()), "sharply transitive C gives the EKR property"},
  };
  if (!psl) r.metrics.push_back({"psl_branch", q % 4 == 3 ? "active" : "inactive", "q = 3 mod 4"});
  finish(r);
  return r;
}

// -- SL(2,3) on the cosets of Z3 -------------------------------------------------------

ConstructionResult build_sl23() {
  const auto f = make_field(3, 1);
  const Mat2 id = Mat2::identity(f);
  const std::vector<Mat2> g_gens{Mat2(f, 1, 1, 0, 1), Mat2(f, 1, 0, 1, 1)};
  const Group<Mat2> g(id, g_gens);
  if (g.order() != 24) throw InternalError("SL(2,3) has order " + num(g.order()));
  const Mat2 hm = g_gens[0];
  const Group<Mat2> h(id, {hm});
  std::vector<Mat2> q8;
  for (const auto& x : g.elements()) {
    const auto o = x.order();
    if (o == 1 || o == 2 || o == 4) q8.push_back(x);
  }
  const auto q8g = Group<Mat2>::from_elements(id, q8);
  if (q8g.order() != 8) throw InternalError("Q8 has order " + num(q8g.order()));

  const CosetAction<Mat2> ca(g_gens, h);
  // the set {1, ah, a^-1 h^-1} is never intersecting here: a^2 = -1, so the
  // ratio a h^2 a = -(a h^2 a^-1) has order 6 and fixes nothing. In fact every
  // intersecting 3-set through 1 is one of the four Sylow 3-subgroups.
  const std::vector<Mat2> g_list(g.elements().begin(), g.elements().end());
  const Mat2 a = *std::find_if(g_list.begin(), g_list.end(), [](const Mat2& x) { return x.order() == 4; });
  const Mat2 hi = hm.inverse();
  auto printed = realize_all(ca, {id, a * hm, a.inverse() * hi});
  const bool printed_ok = pairwise_intersecting(printed);

  ConstructionResult r;
  r.name = "sl23";
  r.action = Action(ca.degree(), ca.generator_images());
  r.group_order = 24;
  r.carrier = mat_carrier(f, false, g_gens);
  r.carrier["a"] = mat_json(a);
  r.carrier["h"] = mat_json(hm);
  r.carrier["printed_witness_intersecting"] = printed_ok;

  r.subgroups.push_back(named("H", "Z3 = <h>", realize_all(ca, {hm}), 3));
  r.subgroups.push_back(named("Q8", "Q8", realize_all(ca, q8g.generators()), 8));
  r.subgroups.push_back(named_set("W", "{1, ah, a^-1 h^-1}", std::move(printed)));
  r.metrics = {
      {"degree", "8", "|SL(2,3)|/|Z3|"},
      {"stabilizer_order", "3", "|Z3|"},
      {"max_intersecting", "3", "Q8 is regular, so the EKR property holds"},
  };
  finish(r);
  return r;
}

// -- fixtures ------------------------------------------------------------------------

namespace {

ConstructionResult fixture(std::string name, json params, Action action, std::uint64_t order) {
  ConstructionResult r;
  r.name = std::move(name);
  r.params = std::move(params);
  r.action = std::move(action);
  r.group_order = order;
  r.carrier = {{"type", "permutation"}};
  r.metrics = {{"degree", num(r.action.degree()), "natural degree"}};
  finish(r);
  return r;
}

Permutation cycle_perm(std::size_t n) {
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>((i + 1) % n);
  return Permutation::from_images(std::span<const Point>(im));
}

}  // namespace

ConstructionResult symmetric_natural(std::size_t n) {
  if (n < 2 || n > 12) throw InvalidArgument("symmetric needs 2 <= n <= 12");
  std::vector<Point> im(n);
  std::iota(im.begin(), im.end(), Point{0});
  std::swap(im[0], im[1]);
  std::uint64_t order = 1;
  for (std::size_t i = 2; i <= n; ++i) order *= i;
  return fixture("symmetric", {{"n", n}},
                 Action(n, {Permutation::from_images(std::span<const Point>(im)), cycle_perm(n)}), order);
}

ConstructionResult dihedral_natural(std::size_t n) {
  if (n < 3) throw InvalidArgument("dihedral needs n >= 3");
  std::vector<Point> im(n);
  for (std::size_t i = 0; i < n; ++i) im[i] = static_cast<Point>((n - i) % n);
  return fixture("dihedral", {{"n", n}},
                 Action(n, {cycle_perm(n), Permutation::from_images(std::span<const Point>(im))}), 2 * n);
}

ConstructionResult cyclic_regular(std::size_t n) {
  if (n < 1 || n > kMaxDegree) throw InvalidArgument("cyclic needs 1 <= n <= 65535");
  return fixture("cyclic", {{"n", n}}, Action(n, {cycle_perm(n)}), n);
}

ConstructionResult z4xz2_regular() {
  // point 2a+b for (a,b) in Z4 x Z2
  std::vector<Point> x(8), y(8);
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      x[2 * a + b] = static_cast<Point>(2 * ((a + 1) % 4) + b);
      y[2 * a + b] = static_cast<Point>(2 * a + (b ^ 1));
    }
  }
  return fixture("z4xz2", json::object(),
                 Action(8, {Permutation::from_images(std::span<const Point>(x)),
                            Permutation::from_images(std::span<const Point>(y))}),
                 8);
}

ConstructionResult agl1_natural(std::uint32_t p, std::uint32_t k) {
  require_prime(p, "p");
  if (k == 0 || ipow(p, k) > 4096) throw InvalidArgument("agl1 needs 1 <= p^k <= 4096");
  const auto f = make_field(p, k);
  const FieldValue q = f.order();
  auto affine = [&](FieldValue a, FieldValue b) {
    std::vector<Point> im(q);
    for (FieldValue x = 0; x < q; ++x) im[x] = static_cast<Point>(f.add(f.mul(x, a), b));
    return Permutation::from_images(std::span<const Point>(im));
  };
  std::vector<Permutation> gens;
  for (std::uint32_t i = 0; i < k; ++i) gens.push_back(affine(1, static_cast<FieldValue>(ipow(p, i))));
  if (q > 2) gens.push_back(affine(f.generator(), 0));
  return fixture("agl1", {{"p", p}, {"k", k}}, Action(q, gens), std::uint64_t{q} * (q - 1));
}

ConstructionResult sylow_wreath(std::uint32_t p, std::uint32_t k) {
  require_prime(p, "p");
  if (k == 0 || ipow(p, k) > 4096) throw InvalidArgument("sylow needs 1 <= p^k <= 4096");
  const std::size_t n = ipow(p, k);
  // digit j (weight p^j) is cycled when every more significant digit is 0
  std::vector<Permutation> gens;
  for (std::uint32_t j = 0; j < k; ++j) {
    const std::size_t w = ipow(p, j);
    std::vector<Point> im(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (x / (w * p) != 0) {
        im[x] = static_cast<Point>(x);
        continue;
      }
      const std::size_t digit = (x / w) % p;
      im[x] = static_cast<Point>(x - digit * w + ((digit + 1) % p) * w);
    }
    gens.push_back(Permutation::from_images(std::span<const Point>(im)));
  }
  // order p^((p^k - 1)/(p - 1))
  const std::uint64_t e = (n - 1) / (p - 1);
  std::optional<std::uint64_t> order;
  if (e < 63 && ipow(p, static_cast<std::uint32_t>(e)) < (1ull << 62)) order = ipow(p, static_cast<std::uint32_t>(e));
  auto r = fixture("sylow", {{"p", p}, {"k", k}}, Action(n, gens), 1);
  r.group_order = order;
  r.stabilizer_order = order ? *order / n : 0;
  return r;
}

ConstructionResult psl2_natural(std::uint32_t p, std::uint32_t k) {
  require_prime(p, "p");
  if (k == 0) throw InvalidArgument("k must be positive");
  const auto f = make_field(p, k);
  const std::uint64_t q = f.order();
  const std::uint64_t order = q * (q * q - 1) / (p == 2 ? 1 : 2);
  return fixture("psl2-natural", {{"p", p}, {"k", k}},
                 Action(q + 1, projective_images(sl2_generators(f, false))), order);
}

// -- dispatch ---------------------------------------------------------------------------

namespace {

std::uint32_t get_u32(const json& params, const char* key) {
  if (!params.contains(key)) throw InvalidArgument(std::string("missing parameter '") + key + "'");
  const auto& v = params.at(key);
  if (v.is_number_unsigned()) return v.get<std::uint32_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint32_t>(v.get<std::int64_t>());
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t pos = 0;
    unsigned long out = 0;
    try {
      out = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == s.size() && !s.empty() && out <= 0xffffffffUL) return static_cast<std::uint32_t>(out);
  }
  throw InvalidArgument(std::string("parameter '") + key + "' must be a non-negative integer");
}

bool get_bool(const json& params, const char* key) {
  if (!params.contains(key)) return false;
  const auto& v = params.at(key);
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    if (s == "true" || s == "1") return true;
    if (s == "false" || s == "0") return false;
  }
  if (v.is_number_integer()) return v.get<std::int64_t>() != 0;
  throw InvalidArgument(std::string("parameter '") + key + "' must be a boolean");
}

std::string get_str(const json& params, const char* key) {
  if (!params.contains(key) || !params.at(key).is_string()) {
    throw InvalidArgument(std::string("missing string parameter '") + key + "'");
  }
  return params.at(key).get<std::string>();
}

}  // namespace

std::vector<std::string> construction_names() {
  return {"nobo",  "agl-example", "wreath", "asc",   "table1", "psl2",       "pglexam", "sl23",
          "symmetric", "dihedral", "cyclic", "z4xz2", "agl1",   "sylow", "psl2-natural"};
}

ConstructionResult construct(const std::string& name, const json& params, std::size_t cap) {
  if (!params.is_object()) throw InvalidArgument("construction parameters must be a JSON object");
  if (name == "nobo") return build_nobo(get_u32(params, "p"), get_u32(params, "d"), cap);
  if (name == "agl-example") return build_agl_example(get_u32(params, "p"), get_u32(params, "d"), cap);
  if (name == "asc") return build_asc(get_u32(params, "f"));
  if (name == "table1") return build_table1(static_cast<int>(get_u32(params, "row")), cap);
  if (name == "psl2") return build_psl2(get_u32(params, "p"), parse_psl2_family(get_str(params, "family")), cap);
  if (name == "pglexam") return build_pglexam(get_u32(params, "q"), get_bool(params, "psl"));
  if (name == "sl23") return build_sl23();
  if (name == "wreath") {
    const auto base = params.contains("base") ? get_str(params, "base") : std::string("sym");
    const auto param = get_u32(params, base == "asc" ? "f" : "n");
    return build_wreath(base, param, params.contains("l") ? get_u32(params, "l") : 2);
  }
  if (name == "symmetric") return symmetric_natural(get_u32(params, "n"));
  if (name == "dihedral") return dihedral_natural(get_u32(params, "n"));
  if (name == "cyclic") return cyclic_regular(get_u32(params, "n"));
  if (name == "z4xz2") return z4xz2_regular();
  if (name == "agl1") return agl1_natural(get_u32(params, "p"), params.contains("k") ? get_u32(params, "k") : 1);
  if (name == "sylow") return sylow_wreath(get_u32(params, "p"), get_u32(params, "k"));
  if (name == "psl2-natural") {
    return psl2_natural(get_u32(params, "p"), params.contains("k") ? get_u32(params, "k") : 1);
  }
  throw InvalidArgument("unknown construction '" + name + "'");
}

json to_json(const ConstructionResult& c) {
  json out;
  out["schema"] = "ekr/1";
  out["construction"] = c.name;
  out["params"] = c.params;
  out["degree"] = c.action.degree();
  out["group_order"] = c.group_order ? json(*c.group_order) : json(nullptr);
  out["stabilizer_order"] = c.group_order ? json(c.stabilizer_order) : json(nullptr);
  out["carrier"] = c.carrier;
  json gens = json::array();
  for (const auto& g : c.action.generators()) gens.push_back(format_cycles(g));
  out["generators"] = gens;
  auto subgroup_json = [](const NamedSubgroup& s) {
    json j{{"role", s.role}, {"label", s.label}, {"order", s.order}, {"is_set", s.is_set}};
    json list = json::array();
    for (const auto& g : s.is_set ? s.elements : s.generators) list.push_back(format_cycles(g));
    j[s.is_set ? "elements" : "generators"] = list;
    return j;
  };
  json subs = json::array();
  for (const auto& s : c.subgroups) subs.push_back(subgroup_json(s));
  out["subgroups"] = subs;
  json metrics = json::array();
  for (const auto& m : c.metrics) metrics.push_back({{"name", m.name}, {"expected", m.value}, {"basis", m.basis}});
  out["metrics"] = metrics;
  json aux = json::array();
  for (const auto& a : c.auxiliary) {
    json sub = json::array();
    for (const auto& s : a.subgroups) sub.push_back(subgroup_json(s));
    json ag = json::array();
    for (const auto& g : a.action.generators()) ag.push_back(format_cycles(g));
    aux.push_back({{"name", a.name}, {"degree", a.action.degree()}, {"generators", ag}, {"subgroups", sub}});
  }
  out["auxiliary"] = aux;
  out["structural"] = static_cast<bool>(c.structural_intersecting);
  return out;
}

}  // namespace ekr
