#include "sidec/verify.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "sidec/errors.hpp"
#include "sidec/linalg.hpp"

namespace sidec::verify {

bool Result::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

namespace {

using Entries = std::map<std::pair<std::size_t, std::size_t>, GaussianRational>;

struct RawCell {
  std::string id;
  std::size_t n = 1;
  GaussianRational value;
  Rational weight;
  bool continuous = false;
  std::uint64_t count = 1;
  Entries entries;

  GaussianRational at(std::size_t i, std::size_t j) const {
    auto it = entries.find({i, j});
    return it == entries.end() ? GaussianRational() : it->second;
  }
};

std::vector<RawCell> read_cells(const Json& field, const std::string& path) {
  std::vector<RawCell> cells;
  const Json& arr = require_member(field, "cells", path);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string p = path + "/cells/" + std::to_string(k);
    const Json& c = arr[k];
    RawCell cell;
    cell.id = require_member(c, "id", p).get<std::string>();
    cell.n = require_member(c, "n", p).get<std::size_t>();
    cell.value = scalar_from_json(require_member(c, "value", p), p + "/value");
    cell.weight = rational_from_json(require_member(c, "weight", p), p + "/weight");
    const Json& mass = require_member(c, "mass", p);
    cell.continuous = mass.at("type") == "continuous";
    if (!cell.continuous) cell.count = mass.at("count").get<std::uint64_t>();
    for (const auto& [key, v] : require_member(c, "entries", p).items()) {
      const auto comma = key.find(',');
      cell.entries[{std::stoul(key.substr(0, comma)), std::stoul(key.substr(comma + 1))}] =
          scalar_from_json(v, p + "/entries/" + key);
    }
    cells.push_back(std::move(cell));
  }
  return cells;
}

ExactMatrix fiber(const RawCell& c) {
  ExactMatrix m(c.n, c.n);
  for (std::size_t i = 0; i < c.n; ++i) m(i, i) = c.value;
  for (const auto& [idx, v] : c.entries) m(idx.first - 1, idx.second - 1) = v;
  return m;
}

const RawCell* by_id(const std::vector<RawCell>& cells, const std::string& id) {
  for (const auto& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

class Recorder {
 public:
  explicit Recorder(Result& r) : r_(r) {}
  void add(std::string name, bool passed, std::string detail = {}) {
    r_.checks.push_back({std::move(name), passed, std::move(detail)});
  }

 private:
  Result& r_;
};

// The perturbed field may only move superdiagonal entries below 1/(2kn),
// and only onto that value; the audit trail must bound the move and stay
// below 1/k.
void check_perturbation(Recorder& rec, const std::string& label, const std::vector<RawCell>& original,
                        const Json& cert) {
  const auto k = cert.at("k").get<unsigned>();
  const std::vector<RawCell> perturbed = read_cells(cert.at("perturbed"), label + "/perturbed");
  bool skeleton = perturbed.size() == original.size();
  bool rule = true;
  std::string why;
  // (block size, i, j) -> max |diff|^2
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Rational> diffs;
  for (const auto& o : original) {
    const RawCell* p = by_id(perturbed, o.id);
    if (p == nullptr || p->n != o.n || p->weight != o.weight || p->value != o.value || p->continuous != o.continuous ||
        p->count != o.count) {
      skeleton = false;
      continue;
    }
    const Rational t(1, 2 * static_cast<long>(k) * static_cast<long>(o.n));
    for (std::size_t i = 1; i <= o.n; ++i) {
      for (std::size_t j = i + 1; j <= o.n; ++j) {
        const GaussianRational e = o.at(i, j), f = p->at(i, j);
        const bool expected = j == i + 1 && e.modulus_squared() < t * t ? f == GaussianRational(t) : f == e;
        if (!expected) {
          rule = false;
          why = "cell \"" + o.id + "\" position (" + std::to_string(i) + "," + std::to_string(j) + ")";
        }
        if (j == i + 1 && f.modulus_squared() < t * t) {
          rule = false;
          why = "cell \"" + o.id + "\" superdiagonal below threshold";
        }
        const Rational d = (f - e).modulus_squared();
        if (sgn(d) != 0) {
          Rational& slot = diffs[{o.n, i, j}];
          if (d > slot) slot = d;
        }
      }
    }
  }
  rec.add(label + ": same cell skeleton", skeleton);
  rec.add(label + ": replacement rule", rule, why);

  bool trail = true;
  Rational bound = 0;
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> listed;
  for (const auto& b : cert.at("norm").at("blocks")) {
    const auto n = b.at("block_size").get<std::size_t>();
    Rational sum = 0;
    for (const auto& pos : b.at("positions")) {
      const std::tuple key{n, pos.at("i").get<std::size_t>(), pos.at("j").get<std::size_t>()};
      listed.insert(key);
      const Rational m2 = rational_from_json(pos.at("max_modulus_squared"), label);
      const Rational up = rational_from_json(pos.at("upper"), label);
      auto it = diffs.find(key);
      const Rational actual = it == diffs.end() ? Rational(0) : it->second;
      if (m2 != actual || sgn(up) < 0 || up * up < m2) trail = false;
      sum += up;
    }
    if (rational_from_json(b.at("sum"), label) != sum) trail = false;
    if (sum > bound) bound = sum;
  }
  for (const auto& [key, v] : diffs) {
    if (!listed.count(key)) trail = false;
  }
  const Rational claimed = rational_from_json(cert.at("bound"), label);
  rec.add(label + ": norm audit trail", trail && claimed == bound &&
                                            rational_from_json(cert.at("norm").at("bound"), label) == bound);
  rec.add(label + ": bound < 1/k", claimed < Rational(1, k), to_string(claimed) + " vs 1/" + std::to_string(k));
}

ExactMatrix canonical_fiber(const RawCell& c) {
  ExactMatrix m(c.n, c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    m(i, i) = c.value;
    if (i + 1 < c.n) m(i, i + 1) = 1;
  }
  return m;
}

// Σ n_i n_j min(m_i, m_j) over summand pairs with a common value.
std::size_t closed_form(const std::vector<std::tuple<std::size_t, std::uint64_t, GaussianRational>>& s) {
  std::size_t d = 0;
  for (const auto& [ma, na, za] : s)
    for (const auto& [mb, nb, zb] : s)
      if (za == zb) d += na * nb * std::min(ma, mb);
  return d;
}

// dim {X : AX = XA} from the vectorized system, built here from scratch.
std::size_t commutant_dimension_bruteforce(const ExactMatrix& a) {
  const std::size_t d = a.rows();
  ExactMatrix sys(d * d, d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        // (AX)_ij = Σ_k A_ik X_kj ; (XA)_ij = Σ_k X_ik A_kj
        if (!a(i, k).is_zero()) sys(i * d + j, k * d + j) += a(i, k);
        if (!a(k, j).is_zero()) sys(i * d + j, i * d + k) -= a(k, j);
      }
  return d * d - rank(sys);
}

void check_report(Result& result, const Json& doc) {
  Recorder rec(result);
  const std::vector<RawCell> input = read_cells(doc.at("field"), "/field");

  std::vector<RawCell> analyzed = input;
  if (!doc.at("perturbation").is_null()) {
    check_perturbation(rec, "perturbation", input, doc.at("perturbation"));
    analyzed = read_cells(doc.at("perturbation").at("perturbed"), "/perturbation/perturbed");
  }

  const Json& seq = doc.at("sequence");
  if (seq.at("status") == "done") {
    const auto& steps = seq.at("steps");
    bool decreasing = true;
    std::optional<Rational> previous;
    for (std::size_t s = 0; s < steps.size(); ++s) {
      check_perturbation(rec, "sequence k=" + std::to_string(steps[s].at("k").get<unsigned>()), input, steps[s]);
      const Rational b = rational_from_json(steps[s].at("bound"), "/sequence");
      if (previous && sgn(*previous) != 0 && !(b < *previous)) decreasing = false;
      previous = b;
    }
    rec.add("sequence: bounds strictly decrease", decreasing && seq.at("strictly_decreasing").get<bool>() == decreasing);
  }

  const Json& red = doc.at("reduction");
  if (red.at("status") != "done") return;
  const std::vector<RawCell> canonical = read_cells(red.at("canonical"), "/reduction/canonical");
  for (const auto& cj : red.at("cells")) {
    const std::string id = cj.at("id").get<std::string>();
    const RawCell* src = by_id(analyzed, id);
    const RawCell* dst = by_id(canonical, id);
    if (src == nullptr || dst == nullptr) {
      rec.add("reduction cell \"" + id + "\"", false, "cell missing");
      continue;
    }
    const ExactMatrix x = matrix_from_json(cj.at("x"), "/reduction/x");
    const ExactMatrix xi = matrix_from_json(cj.at("x_inverse"), "/reduction/x_inverse");
    const ExactMatrix id_n = ExactMatrix::identity(src->n);
    const ExactMatrix j = canonical_fiber(*src);
    const bool inverse_ok = x * xi == id_n && xi * x == id_n;
    const bool intertwines = x * fiber(*src) == j * x;
    const bool target_ok = fiber(*dst) == j && dst->value == src->value && dst->weight == src->weight &&
                           dst->continuous == src->continuous && dst->count == src->count;
    rec.add("reduction cell \"" + id + "\": X X^-1 = X^-1 X = I", inverse_ok);
    rec.add("reduction cell \"" + id + "\": X A = J X", intertwines && target_ok);
  }
  rec.add("reduction: every cell certified", red.at("cells").size() == analyzed.size() && canonical.size() == analyzed.size());

  // Summands regrouped independently from the canonical cells.
  std::map<std::pair<GaussianRational, std::size_t>, std::uint64_t> groups;
  bool infinite = false;
  for (const auto& c : canonical) {
    if (c.continuous) infinite = true;
    else groups[{c.value, c.n}] += c.count;
  }

  const Json& com = doc.at("commutant");
  if (com.at("status") == "done") {
    std::vector<std::tuple<std::size_t, std::uint64_t, GaussianRational>> summands;
    std::vector<ExactMatrix> blocks;
    bool model_ok = true;
    for (const auto& s : com.at("model").at("summands")) {
      const auto m = s.at("block_size").get<std::size_t>();
      const auto n = s.at("multiplicity").get<std::uint64_t>();
      const GaussianRational z = scalar_from_json(s.at("value"), "/commutant/model");
      summands.emplace_back(m, n, z);
      auto it = groups.find({z, m});
      if (it == groups.end() || it->second != n) model_ok = false;
      for (std::uint64_t c = 0; c < n; ++c) blocks.push_back(jordan_block(m, z));
    }
    model_ok = model_ok && summands.size() == groups.size();
    rec.add("commutant: model matches the canonical cells", model_ok);
    const ExactMatrix a = direct_sum(blocks);
    std::vector<ExactMatrix> basis;
    bool commutes = true;
    for (const auto& b : com.at("basis")) {
      basis.push_back(matrix_from_json(b.at("matrix"), "/commutant/basis"));
      if (a * basis.back() != basis.back() * a) commutes = false;
    }
    rec.add("commutant: every basis element commutes", commutes);
    const std::size_t independent = basis.empty() ? 0 : rank(stack_vectorized(basis));
    const std::size_t formula = closed_form(summands);
    rec.add("commutant: basis independent and of closed-form size",
            independent == basis.size() && basis.size() == formula && com.at("dimension") == basis.size(),
            std::to_string(independent) + " independent of " + std::to_string(basis.size()) + ", closed form " +
                std::to_string(formula));
    if (!com.at("oracle_dimension").is_null()) {
      const std::size_t brute = commutant_dimension_bruteforce(a);
      rec.add("commutant: brute-force dimension agrees", brute == basis.size() && com.at("oracle_dimension") == brute);
    }
  }

  const Json& inv = doc.at("invariants");
  if (inv.at("status") == "done") {
    std::map<GaussianRational, std::map<std::size_t, std::optional<std::uint64_t>, std::greater<>>> by_value;
    // A continuous cell at (value, n) makes that coordinate vanish.
    std::set<std::pair<GaussianRational, std::size_t>> continuous_at;
    for (const auto& c : canonical) {
      if (c.continuous) continuous_at.insert({c.value, c.n});
    }
    for (const auto& c : canonical) {
      auto& slot = by_value[c.value][c.n];
      if (continuous_at.count({c.value, c.n})) {
        slot.reset();
      } else {
        slot = slot.value_or(0) + c.count;
      }
    }
    bool ok = inv.at("values").size() == by_value.size();
    std::size_t v = 0;
    for (const auto& [z, sizes] : by_value) {
      if (!ok || v >= inv.at("values").size()) break;
      const Json& jv = inv.at("values")[v++];
      std::vector<std::size_t> bs;
      std::vector<std::uint64_t> cls;
      std::vector<std::size_t> vanishing;
      for (const auto& [n, count] : sizes) {
        bs.push_back(n);
        cls.push_back(count.value_or(0));
        if (!count) vanishing.push_back(n);
      }
      ok = ok && scalar_from_json(jv.at("value"), "/invariants") == z && jv.at("r_A") == sizes.size() &&
           jv.at("V") == "N^" + std::to_string(sizes.size()) && jv.at("K0") == "Z^" + std::to_string(sizes.size()) &&
           jv.at("block_sizes") == bs && jv.at("identity_class") == cls &&
           jv.at("vanishing_block_sizes") == vanishing;
    }
    rec.add("invariants: r_A, V, K0 and identity class recomputed", ok);
  }

  const Json& ver = doc.at("verdict");
  if (ver.at("status") == "done") {
    rec.add("verdict: unique exactly when every multiplicity is finite", ver.at("unique").get<bool>() == !infinite);
  }
}

void check_masa_match(Result& result, const Json& doc) {
  Recorder rec(result);
  std::vector<ExactMatrix> blocks;
  std::vector<std::pair<std::size_t, GaussianRational>> copy_type;
  for (const auto& s : doc.at("model").at("summands")) {
    const auto m = s.at("block_size").get<std::size_t>();
    const GaussianRational z = scalar_from_json(s.at("value"), "/model");
    for (std::uint64_t c = 0; c < s.at("multiplicity").get<std::uint64_t>(); ++c) {
      blocks.push_back(jordan_block(m, z));
      copy_type.emplace_back(m, z);
    }
  }
  const ExactMatrix a = direct_sum(blocks);
  const std::size_t d = a.rows();
  const ExactMatrix id = ExactMatrix::identity(d);
  auto matrices = [](const Json& arr, const std::string& path) {
    std::vector<ExactMatrix> out;
    for (const auto& m : arr) out.push_back(matrix_from_json(m, path));
    return out;
  };
  const ExactMatrix x = matrix_from_json(doc.at("x"), "/x");
  const ExactMatrix xi = matrix_from_json(doc.at("x_inverse"), "/x_inverse");
  const auto p_members = matrices(doc.at("p_members"), "/p_members");
  const auto q_members = matrices(doc.at("q_members"), "/q_members");
  const auto p_atoms = matrices(doc.at("p_atoms"), "/p_atoms");
  const auto q_atoms = matrices(doc.at("q_atoms"), "/q_atoms");
  const auto match = doc.at("match").get<std::vector<std::size_t>>();

  rec.add("X X^-1 = X^-1 X = I", x * xi == id && xi * x == id);
  rec.add("X commutes with A", a * x == x * a);

  // Atoms: idempotents commuting with A, orthogonal, summing to I, one per
  // Jordan copy, each absorbed or annihilated by every member.
  auto atoms_ok = [&](const std::vector<ExactMatrix>& atoms, const std::vector<ExactMatrix>& members) {
    if (atoms.size() != copy_type.size()) return false;
    ExactMatrix sum(d, d);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const ExactMatrix& e = atoms[i];
      if (e * e != e || a * e != e * a) return false;
      for (std::size_t j = i + 1; j < atoms.size(); ++j) {
        if (!(e * atoms[j]).is_zero() || !(atoms[j] * e).is_zero()) return false;
      }
      for (const auto& m : members) {
        const ExactMatrix me = m * e;
        if (!me.is_zero() && me != e) return false;
        if (m * e != e * m) return false;
      }
      sum += e;
    }
    return sum == id;
  };
  rec.add("P atoms form a resolution of the identity", atoms_ok(p_atoms, p_members));
  rec.add("Q atoms form a resolution of the identity", atoms_ok(q_atoms, q_members));

  // Each atom's trace on each Jordan type fixes the type it lives on.
  auto type_of = [&](const ExactMatrix& e) {
    std::map<std::pair<std::size_t, GaussianRational>, GaussianRational> tr;
    std::size_t off = 0;
    for (const auto& [m, z] : copy_type) {
      for (std::size_t t = 0; t < m; ++t) tr[{m, z}] += e(off + t, off + t);
      off += m;
    }
    return tr;
  };
  bool bijection = match.size() == q_atoms.size();
  std::set<std::size_t> hit;
  for (std::size_t i = 0; bijection && i < match.size(); ++i) {
    if (match[i] >= p_atoms.size() || !hit.insert(match[i]).second) bijection = false;
    else if (x * q_atoms[i] * xi != p_atoms[match[i]] || type_of(q_atoms[i]) != type_of(p_atoms[match[i]])) bijection = false;
  }
  rec.add("X maps Q atoms onto P atoms of the same type", bijection);

  bool lattice = true;
  for (const auto& q : q_members) {
    const ExactMatrix img = x * q * xi;
    ExactMatrix rebuilt(d, d);
    for (const auto& e : p_atoms) {
      if (img * e == e) rebuilt += e;
    }
    if (rebuilt != img) lattice = false;
  }
  rec.add("X Q X^-1 lies in the lattice of P for every member Q", lattice);
}

}  // namespace

Result verify_document(const Json& doc) {
  Result result;
  try {
    if (doc.contains("kind") && doc.at("kind") == "masa-match") {
      result.kind = "masa-match";
      check_masa_match(result, doc);
    } else if (doc.contains("format") && doc.at("format") == "sidec-report/1") {
      result.kind = "report";
      check_report(result, doc);
    } else {
      result.checks.push_back({"document kind", false, "neither a structured report nor a masa-match certificate"});
    }
  } catch (const std::exception& e) {
    result.checks.push_back({"document structure", false, e.what()});
  }
  if (result.checks.empty()) result.checks.push_back({"certificates present", true, "nothing to check"});
  return result;
}

}  // namespace sidec::verify
