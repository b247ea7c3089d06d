#include "latmon/lattice.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace latmon {

namespace {

std::string pair_text(const std::string& a, const std::string& b) {
  return "(" + a + ", " + b + ")";
}

}  // namespace

FiniteLattice FiniteLattice::load(const LatticeDescription& d) {
  const auto n = static_cast<std::uint32_t>(d.elements.size());
  if (n == 0) throw InputError("lattice needs at least one element");

  FiniteLattice l;
  l.names_ = d.elements;
  std::map<std::string, ElemId> index;
  for (ElemId i = 0; i < n; ++i) {
    if (l.names_[i].empty()) throw InputError("empty element name");
    if (!index.emplace(l.names_[i], i).second)
      throw InputError("duplicate element name: " + l.names_[i]);
  }

  l.leq_.assign(n, std::vector<bool>(n, false));
  for (const auto& [a, b] : d.relations) {
    auto ia = index.find(a), ib = index.find(b);
    if (ia == index.end() || ib == index.end())
      throw InputError("relation mentions unknown element in " +
                       pair_text(a, b));
    l.leq_[ia->second][ib->second] = true;
  }

  if (d.relations_are_covers) {
    for (ElemId i = 0; i < n; ++i) l.leq_[i][i] = true;
    // reflexive-transitive closure
    for (ElemId k = 0; k < n; ++k)
      for (ElemId i = 0; i < n; ++i)
        if (l.leq_[i][k])
          for (ElemId j = 0; j < n; ++j)
            if (l.leq_[k][j]) l.leq_[i][j] = true;
  } else {
    for (ElemId i = 0; i < n; ++i)
      if (!l.leq_[i][i])
        throw InputError("leq is not reflexive at " + l.names_[i]);
    for (ElemId i = 0; i < n; ++i)
      for (ElemId j = 0; j < n; ++j)
        for (ElemId k = 0; k < n; ++k)
          if (l.leq_[i][j] && l.leq_[j][k] && !l.leq_[i][k])
            throw InputError("leq is not transitive: " + l.names_[i] + " <= " +
                             l.names_[j] + " <= " + l.names_[k]);
  }
  for (ElemId i = 0; i < n; ++i)
    for (ElemId j = 0; j < n; ++j)
      if (i != j && l.leq_[i][j] && l.leq_[j][i])
        throw InputError("order violation: cycle through " +
                         pair_text(l.names_[i], l.names_[j]));

  // Joins and meets: the unique least upper / greatest lower bound.
  l.join_.assign(n, std::vector<ElemId>(n, 0));
  l.meet_.assign(n, std::vector<ElemId>(n, 0));
  for (ElemId a = 0; a < n; ++a) {
    for (ElemId b = 0; b < n; ++b) {
      std::vector<ElemId> ub, lb;
      for (ElemId c = 0; c < n; ++c) {
        if (l.leq_[a][c] && l.leq_[b][c]) ub.push_back(c);
        if (l.leq_[c][a] && l.leq_[c][b]) lb.push_back(c);
      }
      auto least = [&](const std::vector<ElemId>& xs) -> std::optional<ElemId> {
        for (ElemId x : xs) {
          bool below_all = true;
          for (ElemId y : xs)
            if (!l.leq_[x][y]) below_all = false;
          if (below_all) return x;
        }
        return std::nullopt;
      };
      auto greatest = [&](const std::vector<ElemId>& xs) -> std::optional<ElemId> {
        for (ElemId x : xs) {
          bool above_all = true;
          for (ElemId y : xs)
            if (!l.leq_[y][x]) above_all = false;
          if (above_all) return x;
        }
        return std::nullopt;
      };
      auto j = least(ub);
      if (!j)
        throw InputError("not a lattice: no least upper bound for " +
                         pair_text(l.names_[a], l.names_[b]));
      auto m = greatest(lb);
      if (!m)
        throw InputError("not a lattice: no greatest lower bound for " +
                         pair_text(l.names_[a], l.names_[b]));
      l.join_[a][b] = *j;
      l.meet_[a][b] = *m;
    }
  }

  ElemId bot = 0, top = 0;
  for (ElemId i = 0; i < n; ++i) {
    bot = l.meet_[bot][i];
    top = l.join_[top][i];
  }
  l.bottom_ = bot;
  l.top_ = top;
  return l;
}

FiniteLattice FiniteLattice::load_json(const nlohmann::json& j) {
  LatticeDescription d;
  if (!j.is_object() || !j.contains("elements") || !j["elements"].is_array())
    throw InputError("lattice file must be an object with an \"elements\" array");
  for (const auto& e : j["elements"]) {
    if (!e.is_string()) throw InputError("element names must be strings");
    d.elements.push_back(e.get<std::string>());
  }
  const bool has_leq = j.contains("leq");
  const bool has_covers = j.contains("covers");
  if (has_leq == has_covers)
    throw InputError("lattice file needs exactly one of \"leq\" or \"covers\"");
  d.relations_are_covers = has_covers;
  const auto& rel = has_covers ? j["covers"] : j["leq"];
  if (!rel.is_array()) throw InputError("relation must be an array of pairs");
  for (const auto& p : rel) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
      throw InputError("relation entries must be [name, name] pairs");
    d.relations.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
  }
  return load(d);
}

FiniteLattice FiniteLattice::load_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("lattice file is not valid JSON: ") +
                     ex.what());
  }
  return load_json(j);
}

std::optional<ElemId> FiniteLattice::index_of(const std::string& name) const {
  for (ElemId i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

CompactSemilattice::CompactSemilattice(const FiniteLattice& l) : lat_(&l) {
  for (ElemId x = 0; x < l.size(); ++x)
    if (x != l.bottom()) carrier_.push_back(x);
  std::sort(carrier_.begin(), carrier_.end(),
            [&l](ElemId a, ElemId b) { return l.name(a) < l.name(b); });
  of_elem_.assign(l.size(), static_cast<CompactId>(-1));
  for (CompactId c = 0; c < carrier_.size(); ++c) of_elem_[carrier_[c]] = c;
}

std::optional<CompactId> CompactSemilattice::compact_of(ElemId x) const {
  if (x >= of_elem_.size() || of_elem_[x] == static_cast<CompactId>(-1))
    return std::nullopt;
  return of_elem_[x];
}

CompactId CompactSemilattice::join(CompactId a, CompactId b) const {
  const ElemId j = lat_->join(carrier_[a], carrier_[b]);
  return of_elem_[j];  // join of non-bottom elements is non-bottom
}

CompactId CompactSemilattice::top() const {
  if (carrier_.empty()) throw DomainError("empty compact carrier has no top");
  CompactId t = 0;
  for (CompactId c = 1; c < size(); ++c) t = join(t, c);
  return t;
}

std::size_t Ideal::count() const {
  std::size_t n = 0;
  for (auto b : bits_) n += static_cast<std::size_t>(std::popcount(b));
  return n;
}

std::vector<CompactId> Ideal::members() const {
  std::vector<CompactId> out;
  for (CompactId c = 0; c < universe_; ++c)
    if (contains(c)) out.push_back(c);
  return out;
}

bool Ideal::subset_of(const Ideal& other) const {
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i] & ~other.bits_[i]) return false;
  return true;
}

bool is_ideal(const CompactSemilattice& c, const Ideal& i) {
  if (i.universe() != c.size()) return false;
  for (CompactId a = 0; a < c.size(); ++a) {
    if (!i.contains(a)) continue;
    for (CompactId b = 0; b < c.size(); ++b) {
      if (c.leq(b, a) && !i.contains(b)) return false;        // downward
      if (i.contains(b) && !i.contains(c.join(a, b))) return false;  // joins
    }
  }
  return true;
}

Ideal principal_ideal(const CompactSemilattice& c, CompactId m) {
  Ideal i(c.size());
  for (CompactId b = 0; b < c.size(); ++b)
    if (c.leq(b, m)) i.add(b);
  return i;
}

std::vector<Ideal> ideals_enumerate(const CompactSemilattice& c) {
  std::vector<Ideal> out;
  out.push_back(Ideal(c.size()));
  for (CompactId m = 0; m < c.size(); ++m)
    out.push_back(principal_ideal(c, m));
  return out;
}

Ideal ideal_join(const CompactSemilattice& c,
                 const std::vector<Ideal>& family) {
  if (family.empty()) throw DomainError("ideal_join of an empty family");
  bool any = false;
  CompactId m = 0;
  for (const auto& i : family) {
    for (CompactId x : i.members()) {
      m = any ? c.join(m, x) : x;
      any = true;
    }
  }
  if (!any) return Ideal(c.size());
  return principal_ideal(c, m);
}

Ideal ideal_meet(const CompactSemilattice& c,
                 const std::vector<Ideal>& family) {
  if (family.empty()) throw DomainError("ideal_meet of an empty family");
  Ideal out = family.front();
  for (std::size_t i = 1; i < family.size(); ++i) {
    Ideal next(c.size());
    for (CompactId x = 0; x < c.size(); ++x)
      if (out.contains(x) && family[i].contains(x)) next.add(x);
    out = next;
  }
  return out;
}

CheckReport ideal_lattice_iso_check(const FiniteLattice& l) {
  CheckReport rep;
  rep.name = "ideal-lattice-iso";
  const CompactSemilattice c(l);
  const auto ideals = ideals_enumerate(c);
  rep.counts["elements"] = l.size();
  rep.counts["ideals"] = ideals.size();
  if (ideals.size() != l.size())
    rep.add_witness("ideal count " + std::to_string(ideals.size()) +
                    " differs from element count " + std::to_string(l.size()));

  auto image = [&](ElemId x) {
    Ideal i(c.size());
    for (CompactId b = 0; b < c.size(); ++b)
      if (l.leq(c.elem(b), x)) i.add(b);
    return i;
  };

  // Bijectivity: images are pairwise distinct and exhaust the ideal list.
  std::vector<Ideal> images;
  for (ElemId x = 0; x < l.size(); ++x) images.push_back(image(x));
  for (ElemId x = 0; x < l.size(); ++x) {
    if (std::find(ideals.begin(), ideals.end(), images[x]) == ideals.end())
      rep.add_witness("image of " + l.name(x) + " is not an ideal");
    for (ElemId y = 0; y < x; ++y)
      if (images[x] == images[y])
        rep.add_witness("images collide for " + l.name(x) + " and " +
                        l.name(y));
  }

  for (ElemId x = 0; x < l.size(); ++x) {
    for (ElemId y = 0; y < l.size(); ++y) {
      if ((l.leq(x, y)) != images[x].subset_of(images[y]))
        rep.add_witness("order mismatch at " + pair_text(l.name(x), l.name(y)));
      const Ideal ij = ideal_join(c, {images[x], images[y]});
      const Ideal im = ideal_meet(c, {images[x], images[y]});
      if (ij != images[l.join(x, y)])
        rep.add_witness("join mismatch at " + pair_text(l.name(x), l.name(y)));
      if (im != images[l.meet(x, y)])
        rep.add_witness("meet mismatch at " + pair_text(l.name(x), l.name(y)));
    }
  }
  rep.counts["pairs_checked"] =
      static_cast<std::uint64_t>(l.size()) * l.size();
  return rep;
}

}  // namespace latmon
