#include "bnest/expectation.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "bnest/error.hpp"

namespace bnest {

DistExpr DistExpr::uniform(const std::vector<Rational>& values) {
  DistExpr d;
  Rational p(1, static_cast<unsigned long>(values.size()));
  for (const auto& v : values) d.outcomes.emplace_back(Coefficient(p), v);
  return d;
}

void DistExpr::validate() const {
  Coefficient mass(0);
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& [p, v] = outcomes[i];
    if (p.is_infinite()) throw Error(ErrorKind::InvalidArgument, "infinite probability in distribution");
    if (p.is_rational() && p.rational() < 0)
      throw Error(ErrorKind::InvalidArgument, "negative probability " + p.to_string());
    for (std::size_t j = 0; j < i; ++j)
      if (outcomes[j].second == v)
        throw Error(ErrorKind::InvalidArgument, "distribution repeats value " + rational_string(v));
    mass += p;
  }
  if (!mass.is_one()) throw Error(ErrorKind::MassNotOne, "distribution has total mass " + mass.to_string());
}

std::set<std::string> DistExpr::parameters() const {
  std::set<std::string> out;
  for (const auto& o : outcomes) {
    auto ps = o.first.parameters();
    out.insert(ps.begin(), ps.end());
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

bool same_values(const VarDomain::Values& a, const VarDomain::Values& b) { return a == b || *a == *b; }

std::size_t checked_cells(const std::vector<Expectation::Axis>& axes) {
  std::size_t n = 1;
  const std::size_t cap = Expectation::max_cells();
  for (const auto& ax : axes) {
    n *= ax.values->size();
    if (n > cap)
      throw Error(ErrorKind::TableTooLarge,
                  "expectation table over " + std::to_string(axes.size()) + " variables exceeds " +
                      std::to_string(cap) + " cells (set BNEST_MAX_CELLS to raise the limit)");
  }
  return n;
}

std::vector<std::size_t> strides_of(const std::vector<Expectation::Axis>& axes) {
  std::vector<std::size_t> s(axes.size());
  std::size_t acc = 1;
  for (std::size_t k = axes.size(); k-- > 0;) {
    s[k] = acc;
    acc *= axes[k].values->size();
  }
  return s;
}

// Odometer over a list of axis sizes, tracking linear offsets into several
// tables at once.
class Odometer {
 public:
  Odometer(std::vector<std::size_t> sizes, std::vector<std::vector<std::size_t>> strides)
      : sizes_(std::move(sizes)), strides_(std::move(strides)), idx_(sizes_.size(), 0), off_(strides_.size(), 0) {}

  const std::vector<std::size_t>& index() const { return idx_; }
  std::size_t offset(std::size_t table) const { return off_[table]; }

  bool next() {
    for (std::size_t k = sizes_.size(); k-- > 0;) {
      if (++idx_[k] < sizes_[k]) {
        for (std::size_t t = 0; t < off_.size(); ++t) off_[t] += strides_[t][k];
        return true;
      }
      for (std::size_t t = 0; t < off_.size(); ++t) off_[t] -= strides_[t][k] * (sizes_[k] - 1);
      idx_[k] = 0;
    }
    return false;
  }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::vector<std::size_t>> strides_;
  std::vector<std::size_t> idx_;
  std::vector<std::size_t> off_;
};

std::string cell_string(const Coefficient& c) {
  std::string s = c.to_string();
  return c.is_symbolic() && s.front() != '(' ? "(" + s + ")" : s;
}

}  // namespace

std::size_t Expectation::max_cells() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("BNEST_MAX_CELLS")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(1) << 26;
  }();
  return cap;
}

Expectation::Expectation(std::vector<Axis> axes, std::vector<Coefficient> cells)
    : axes_(std::move(axes)), cells_(std::move(cells)) {
  for (const auto& c : cells_)
    if (c.is_rational() && c.rational() < 0)
      throw Error(ErrorKind::NegativeValue, "expectation entry " + c.to_string() + " is negative");
  minimize();
}

Expectation Expectation::tabulate(const VarDomain& domain, std::vector<std::string> vars,
                                  const std::function<Coefficient(const Assignment&)>& fn) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  std::vector<Axis> axes;
  for (const auto& v : vars) axes.push_back({v, domain.values(v)});
  const std::size_t n = checked_cells(axes);
  std::vector<Coefficient> cells;
  cells.reserve(n);
  std::vector<std::size_t> sizes;
  for (const auto& ax : axes) sizes.push_back(ax.values->size());
  Odometer od(sizes, {});
  Assignment sigma;
  do {
    for (std::size_t k = 0; k < axes.size(); ++k) sigma[axes[k].name] = (*axes[k].values)[od.index()[k]];
    cells.push_back(fn(sigma));
  } while (od.next());
  return Expectation(std::move(axes), std::move(cells));
}

Expectation Expectation::iverson(const Guard& g, const VarDomain& domain) {
  g.check_against(domain);
  auto vars = g.variables();
  return tabulate(domain, {vars.begin(), vars.end()}, [&](const Assignment& sigma) {
    return Coefficient(g.holds([&](const std::string& v) -> const Rational& { return sigma.at(v); }) ? 1 : 0);
  });
}

std::vector<std::string> Expectation::support() const {
  std::vector<std::string> out;
  for (const auto& ax : axes_) out.push_back(ax.name);
  return out;
}

const Coefficient& Expectation::constant_value() const {
  if (!is_constant()) throw std::logic_error("expectation is not constant: " + to_string());
  return cells_.front();
}

bool Expectation::has_parameters() const {
  return std::any_of(cells_.begin(), cells_.end(), [](const Coefficient& c) { return c.is_symbolic(); });
}

std::set<std::string> Expectation::parameters() const {
  std::set<std::string> out;
  for (const auto& c : cells_) {
    auto ps = c.parameters();
    out.insert(ps.begin(), ps.end());
  }
  return out;
}

Expectation Expectation::combine(const Expectation& a, const Expectation& b,
                                 const std::function<Coefficient(const Coefficient&, const Coefficient&)>& op) {
  if (a.is_constant() && b.is_constant()) return Expectation(op(a.cells_[0], b.cells_[0]));

  std::vector<Axis> axes;
  std::vector<std::size_t> sa_full = strides_of(a.axes_), sb_full = strides_of(b.axes_);
  std::vector<std::size_t> sa, sb;
  std::size_t i = 0, j = 0;
  while (i < a.axes_.size() || j < b.axes_.size()) {
    if (j == b.axes_.size() || (i < a.axes_.size() && a.axes_[i].name < b.axes_[j].name)) {
      axes.push_back(a.axes_[i]);
      sa.push_back(sa_full[i++]);
      sb.push_back(0);
    } else if (i == a.axes_.size() || b.axes_[j].name < a.axes_[i].name) {
      axes.push_back(b.axes_[j]);
      sa.push_back(0);
      sb.push_back(sb_full[j++]);
    } else {
      if (!same_values(a.axes_[i].values, b.axes_[j].values))
        throw Error(ErrorKind::InvalidArgument, "variable '" + a.axes_[i].name + "' has two different domains");
      axes.push_back(a.axes_[i]);
      sa.push_back(sa_full[i++]);
      sb.push_back(sb_full[j++]);
    }
  }
  const std::size_t n = checked_cells(axes);
  std::vector<std::size_t> sizes;
  for (const auto& ax : axes) sizes.push_back(ax.values->size());
  std::vector<Coefficient> cells;
  cells.reserve(n);
  Odometer od(sizes, {sa, sb});
  do {
    cells.push_back(op(a.cells_[od.offset(0)], b.cells_[od.offset(1)]));
  } while (od.next());
  return Expectation(std::move(axes), std::move(cells));
}

void Expectation::minimize() {
  bool changed = true;
  while (changed && !axes_.empty()) {
    changed = false;
    auto strides = strides_of(axes_);
    for (std::size_t k = axes_.size(); k-- > 0;) {
      const std::size_t stride = strides[k], size = axes_[k].values->size();
      bool constant_along = true;
      for (std::size_t c = 0; c < cells_.size() && constant_along; ++c) {
        std::size_t ik = (c / stride) % size;
        if (ik != 0 && !(cells_[c] == cells_[c - ik * stride])) constant_along = false;
      }
      if (!constant_along) continue;
      std::vector<Coefficient> kept;
      kept.reserve(cells_.size() / size);
      for (std::size_t c = 0; c < cells_.size(); ++c)
        if ((c / stride) % size == 0) kept.push_back(std::move(cells_[c]));
      cells_ = std::move(kept);
      axes_.erase(axes_.begin() + static_cast<std::ptrdiff_t>(k));
      changed = true;
      break;
    }
  }
}

Expectation Expectation::operator+(const Expectation& o) const {
  return combine(*this, o, [](const Coefficient& x, const Coefficient& y) { return x + y; });
}

Expectation Expectation::operator*(const Expectation& o) const {
  return combine(*this, o, [](const Coefficient& x, const Coefficient& y) { return x * y; });
}

Expectation Expectation::operator-(const Expectation& o) const {
  return combine(*this, o, [](const Coefficient& x, const Coefficient& y) { return x - y; });
}

Expectation Expectation::divide(const Expectation& den) const {
  return combine(*this, den, [](const Coefficient& x, const Coefficient& y) { return guarded_div(x, y); });
}

Expectation Expectation::scale(const Coefficient& c) const {
  if (c.is_zero()) return Expectation(0);
  return map([&](const Coefficient& x) { return c * x; });
}

Expectation Expectation::map(const std::function<Coefficient(const Coefficient&)>& fn) const {
  std::vector<Coefficient> cells;
  cells.reserve(cells_.size());
  for (const auto& c : cells_) cells.push_back(fn(c));
  return Expectation(axes_, std::move(cells));
}

Expectation Expectation::substitute_parameters(const std::map<std::string, Rational>& point) const {
  return map([&](const Coefficient& c) { return c.substitute(point); });
}

Expectation Expectation::substitute(const std::string& x, const Rational& v) const {
  auto it = std::find_if(axes_.begin(), axes_.end(), [&](const Axis& ax) { return ax.name == x; });
  if (it == axes_.end()) return *this;
  const auto& vals = *it->values;
  auto pos = std::find(vals.begin(), vals.end(), v);
  if (pos == vals.end())
    throw Error(ErrorKind::ValueOutOfDomain, rational_string(v) + " is not in the domain of '" + x + "'");
  const std::size_t k = static_cast<std::size_t>(it - axes_.begin());
  const std::size_t j = static_cast<std::size_t>(pos - vals.begin());

  auto full = strides_of(axes_);
  std::vector<Axis> axes;
  std::vector<std::size_t> sizes, strides;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    if (a == k) continue;
    axes.push_back(axes_[a]);
    sizes.push_back(axes_[a].values->size());
    strides.push_back(full[a]);
  }
  std::vector<Coefficient> cells;
  Odometer od(sizes, {strides});
  const std::size_t base = j * full[k];
  do {
    cells.push_back(cells_[base + od.offset(0)]);
  } while (od.next());
  return Expectation(std::move(axes), std::move(cells));
}

Expectation Expectation::expected_over_dist(const std::string& x, const DistExpr& mu) const {
  mu.validate();
  auto sup = support();
  if (!std::binary_search(sup.begin(), sup.end(), x)) return *this;
  Expectation acc(0);
  for (const auto& [p, v] : mu.outcomes) acc = acc + substitute(x, v).scale(p);
  return acc;
}

const Coefficient& Expectation::point_eval(const Assignment& sigma) const {
  auto strides = strides_of(axes_);
  std::size_t off = 0;
  for (std::size_t k = 0; k < axes_.size(); ++k) {
    auto it = sigma.find(axes_[k].name);
    if (it == sigma.end()) throw Error(ErrorKind::IncompleteState, "state does not assign '" + axes_[k].name + "'");
    const auto& vals = *axes_[k].values;
    auto pos = std::find(vals.begin(), vals.end(), it->second);
    if (pos == vals.end())
      throw Error(ErrorKind::ValueOutOfDomain,
                  rational_string(it->second) + " is not in the domain of '" + axes_[k].name + "'");
    off += static_cast<std::size_t>(pos - vals.begin()) * strides[k];
  }
  return cells_[off];
}

bool Expectation::leq(const Expectation& o) const {
  if (has_parameters() || o.has_parameters())
    throw Error(ErrorKind::ParameterizedComparison, "cannot order expectations with symbolic entries");
  bool ok = true;
  combine(*this, o, [&](const Coefficient& x, const Coefficient& y) {
    if (y.is_infinite()) return Coefficient(0);
    if (x.is_infinite() || x.rational() > y.rational()) ok = false;
    return Coefficient(0);
  });
  return ok;
}

std::string Expectation::to_string() const {
  if (is_constant()) return cell_string(cells_.front());
  std::vector<std::size_t> sizes;
  for (const auto& ax : axes_) sizes.push_back(ax.values->size());
  Odometer od(sizes, {strides_of(axes_)});
  std::ostringstream os;
  bool first = true;
  do {
    const auto& c = cells_[od.offset(0)];
    if (c.is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "[";
    for (std::size_t k = 0; k < axes_.size(); ++k) {
      if (k) os << " ∧ ";
      os << axes_[k].name << "=" << rational_string((*axes_[k].values)[od.index()[k]]);
    }
    os << "]·" << cell_string(c);
  } while (od.next());
  return first ? "0" : os.str();
}

bool Expectation::operator==(const Expectation& o) const {
  if (axes_.size() != o.axes_.size()) return false;
  for (std::size_t k = 0; k < axes_.size(); ++k)
    if (axes_[k].name != o.axes_[k].name || !same_values(axes_[k].values, o.axes_[k].values)) return false;
  return cells_ == o.cells_;
}

}  // namespace bnest
