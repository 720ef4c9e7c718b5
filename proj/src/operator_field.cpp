#include "sidec/operator_field.hpp"

#include <algorithm>
#include <set>

#include "sidec/errors.hpp"

namespace sidec {

GaussianRational SpectralCell::entry(std::size_t i, std::size_t j) const {
  auto it = upper_entries.find({i, j});
  return it == upper_entries.end() ? GaussianRational{} : it->second;
}

const SpectralCell* OperatorField::find(const std::string& id) const {
  for (const auto& c : cells) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

bool MultiplicityProfile::has_infinite() const {
  return std::any_of(entries.begin(), entries.end(),
                     [](const ProfileEntry& e) { return e.multiplicity.is_infinite(); });
}

ValidationReport validate_field(const OperatorField& field, const Limits& limits) {
  ValidationReport report;
  auto fail = [&report](std::string msg) {
    report.valid = false;
    report.errors.push_back(std::move(msg));
  };
  if (field.cells.empty()) fail("field has no cells");

  std::set<std::string> seen;
  for (const auto& cell : field.cells) {
    const std::string where = "cell \"" + cell.id + "\": ";
    if (cell.id.empty()) fail("cell with empty id");
    if (!seen.insert(cell.id).second) fail("duplicate cell id \"" + cell.id + "\"");
    if (sgn(cell.weight) <= 0) fail(where + "weight must be positive, got " + to_string(cell.weight));
    if (const auto* atomic = std::get_if<AtomicMass>(&cell.mass); atomic && atomic->count < 1) {
      fail(where + "atomic count must be at least 1");
    }
    if (cell.block_size < 1) fail(where + "block size must be at least 1");
    if (cell.block_size > limits.max_dimension) {
      fail(where + "block size " + std::to_string(cell.block_size) + " exceeds the configured cap " +
           std::to_string(limits.max_dimension));
    }
    for (const auto& [idx, value] : cell.upper_entries) {
      const auto [i, j] = idx;
      if (i < 1 || j < 1 || i >= j || j > cell.block_size) {
        fail(where + "entry index (" + std::to_string(i) + "," + std::to_string(j) +
             ") is not a strictly upper position of a " + std::to_string(cell.block_size) + "x" +
             std::to_string(cell.block_size) + " fiber");
      }
    }
    report.simple_multiplicity[cell.block_size] = true;
  }
  return report;
}

void require_valid(const OperatorField& field, const Limits& limits) {
  ValidationReport report = validate_field(field, limits);
  if (report.valid) return;
  std::string msg = "invalid field";
  for (const auto& e : report.errors) msg += "\n  " + e;
  throw ValidationError(msg);
}

ExactMatrix fiber_matrix(const SpectralCell& cell) {
  const std::size_t n = cell.block_size;
  ExactMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = cell.spectral_value;
  for (const auto& [idx, value] : cell.upper_entries) {
    if (idx.first < 1 || idx.first >= idx.second || idx.second > n) {
      throw ValidationError("cell \"" + cell.id + "\": entry outside the strict upper triangle");
    }
    m(idx.first - 1, idx.second - 1) = value;
  }
  return m;
}

ExactMatrix fiber_matrix(const OperatorField& field, const std::string& cell_id) {
  const SpectralCell* cell = field.find(cell_id);
  if (cell == nullptr) throw PreconditionError("unknown cell id \"" + cell_id + "\"");
  return fiber_matrix(*cell);
}

MultiplicityProfile multiplicity_profile(const OperatorField& field) {
  struct Acc {
    bool infinite = false;
    std::uint64_t count = 0;
    Rational weight{0};
  };
  std::map<std::pair<std::size_t, GaussianRational>, Acc> groups;
  for (const auto& cell : field.cells) {
    Acc& acc = groups[{cell.block_size, cell.spectral_value}];
    if (const auto* atomic = std::get_if<AtomicMass>(&cell.mass)) {
      acc.count += atomic->count;
    } else {
      acc.infinite = true;
    }
    acc.weight += cell.weight;
  }
  MultiplicityProfile profile;
  for (const auto& [key, acc] : groups) {
    profile.entries.push_back({key.first, key.second,
                               acc.infinite ? Multiplicity::infinite() : Multiplicity::finite(acc.count),
                               acc.weight});
  }
  return profile;
}

namespace {

void require_same_skeleton(const OperatorField& f, const OperatorField& g) {
  if (f.cells.size() != g.cells.size()) {
    throw PreconditionError("skeleton mismatch: " + std::to_string(f.cells.size()) + " vs " +
                            std::to_string(g.cells.size()) + " cells");
  }
  for (const auto& cf : f.cells) {
    const SpectralCell* cg = g.find(cf.id);
    if (cg == nullptr) throw PreconditionError("skeleton mismatch: cell \"" + cf.id + "\" missing");
    if (cg->block_size != cf.block_size || cg->weight != cf.weight) {
      throw PreconditionError("skeleton mismatch: cell \"" + cf.id + "\" differs in block size or weight");
    }
  }
}

}  // namespace

NormCertificate entry_supnorm_bound(const OperatorField& f, const OperatorField& g, const Limits& limits) {
  require_same_skeleton(f, g);
  // block size -> (i, j) -> max |difference|^2 over cells
  std::map<std::size_t, std::map<EntryIndex, Rational>> sups;
  for (const auto& cf : f.cells) {
    const SpectralCell& cg = *g.find(cf.id);
    auto& block = sups[cf.block_size];
    auto record = [&block](EntryIndex idx, const GaussianRational& diff) {
      if (diff.is_zero()) return;
      Rational m2 = diff.modulus_squared();
      auto [it, inserted] = block.try_emplace(idx, m2);
      if (!inserted && it->second < m2) it->second = m2;
    };
    record({1, 1}, cf.spectral_value - cg.spectral_value);
    std::set<EntryIndex> positions;
    for (const auto& [idx, v] : cf.upper_entries) positions.insert(idx);
    for (const auto& [idx, v] : cg.upper_entries) positions.insert(idx);
    for (const auto& idx : positions) record(idx, cf.entry(idx.first, idx.second) - cg.entry(idx.first, idx.second));
  }

  NormCertificate cert;
  cert.bound = 0;
  for (const auto& [n, block] : sups) {
    BlockBound bb;
    bb.block_size = n;
    bb.sum = 0;
    for (const auto& [idx, m2] : block) {
      PositionBound pb{idx.first, idx.second, m2, sqrt_upper_bound(m2, limits.sqrt_depth)};
      bb.sum += pb.upper;
      bb.positions.push_back(std::move(pb));
    }
    if (bb.sum > cert.bound) cert.bound = bb.sum;
    cert.blocks.push_back(std::move(bb));
  }
  return cert;
}

}  // namespace sidec
