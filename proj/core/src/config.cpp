#include "taxchain/config.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include "taxchain/error.hpp"

namespace taxchain {

namespace {

struct Entry {
  std::string value;
  int line = 0;  // 0 for command-line overrides
};

using Table = std::map<std::string, Entry>;  // "section.key" -> entry

constexpr std::array<std::string_view, 19> kKnownKeys = {
    "demand.kind", "demand.mu", "demand.sigma", "demand.lo", "demand.hi", "demand.rate",
    "market.m", "market.gamma0", "market.eta", "market.k",
    "tax.tau", "tax.tau0",
    "policy.alpha", "policy.beta",
    "agent.reservation",
    "solver.tol", "solver.max_iter", "solver.grid_points", "solver.damping",
};

constexpr std::array<std::string_view, 6> kSections = {"demand", "market", "tax",
                                                       "policy", "agent",  "solver"};

bool known_key(std::string_view key) {
  for (auto k : kKnownKeys) {
    if (k == key) return true;
  }
  return false;
}

bool known_section(std::string_view name) {
  for (auto k : kSections) {
    if (k == name) return true;
  }
  return false;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(std::string_view source, int line) {
  if (line == 0) return "override";
  return std::string(source) + ":" + std::to_string(line);
}

class Reader {
 public:
  Reader(const Table& table, std::string_view source) : table_(table), source_(source) {}

  bool has(const std::string& key) const { return table_.count(key) != 0; }

  double number(const std::string& key) const {
    const Entry& e = entry(key);
    return to_double(key, e);
  }

  std::optional<double> optional_number(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return number(key);
  }

  std::optional<int> optional_integer(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    const Entry& e = table_.at(key);
    int v = 0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
      fail(ErrorKind::ConfigParseError,
           where(source_, e.line) + ": '" + key + "' expects an integer, got '" + e.value + "'");
    }
    return v;
  }

  const std::string& text(const std::string& key) const { return entry(key).value; }

  void reject(const std::string& key, std::string_view why) const {
    if (!has(key)) return;
    fail(ErrorKind::ConfigParseError,
         where(source_, table_.at(key).line) + ": '" + key + "' " + std::string(why));
  }

 private:
  const Entry& entry(const std::string& key) const {
    auto it = table_.find(key);
    if (it == table_.end()) {
      fail(ErrorKind::ConfigParseError, std::string(source_) + ": missing required key '" + key + "'");
    }
    return it->second;
  }

  double to_double(const std::string& key, const Entry& e) const {
    double v = 0.0;
    const char* begin = e.value.data();
    const char* end = begin + e.value.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end || e.value.empty()) {
      fail(ErrorKind::ConfigParseError,
           where(source_, e.line) + ": '" + key + "' expects a number, got '" + e.value + "'");
    }
    return v;
  }

  const Table& table_;
  std::string_view source_;
};

void apply_override(Table& table, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos) {
    fail(ErrorKind::ConfigParseError, "override '" + item + "' is not section.key=value");
  }
  const std::string key(trim(std::string_view(item).substr(0, eq)));
  const std::string value(trim(std::string_view(item).substr(eq + 1)));
  if (!known_key(key)) fail(ErrorKind::UnknownKey, "override: unknown key '" + key + "'");
  table[key] = Entry{value, 0};
}

}  // namespace

Scenario parse_config_text(std::string_view text, std::span<const std::string> overrides,
                           std::string_view source) {
  Table table;
  std::string section;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (const auto hash = line.find_first_of("#;"); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        fail(ErrorKind::ConfigParseError, where(source, line_no) + ": unterminated section header");
      }
      section = std::string(trim(line.substr(1, line.size() - 2)));
      if (!known_section(section)) {
        fail(ErrorKind::UnknownKey, where(source, line_no) + ": unknown section [" + section + "]");
      }
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      fail(ErrorKind::ConfigParseError, where(source, line_no) + ": expected key = value");
    }
    if (section.empty()) {
      fail(ErrorKind::ConfigParseError, where(source, line_no) + ": key outside of a section");
    }
    const std::string key = section + "." + std::string(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (!known_key(key)) {
      fail(ErrorKind::UnknownKey, where(source, line_no) + ": unknown key '" + key + "'");
    }
    if (table.count(key)) {
      fail(ErrorKind::ConfigParseError, where(source, line_no) + ": duplicate key '" + key + "'");
    }
    table[key] = Entry{value, line_no};
  }
  for (const auto& item : overrides) apply_override(table, item);

  const Reader r(table, source);
  Scenario s;
  const std::string& kind = r.text("demand.kind");
  if (kind == "normal") {
    r.reject("demand.lo", "is not used by normal demand");
    r.reject("demand.hi", "is not used by normal demand");
    r.reject("demand.rate", "is not used by normal demand");
    s.demand = DemandDistribution::normal(r.number("demand.mu"), r.number("demand.sigma"));
  } else if (kind == "uniform") {
    r.reject("demand.mu", "is not used by uniform demand");
    r.reject("demand.sigma", "is not used by uniform demand");
    r.reject("demand.rate", "is not used by uniform demand");
    s.demand = DemandDistribution::uniform(r.number("demand.lo"), r.number("demand.hi"));
  } else if (kind == "exponential") {
    for (const char* key : {"demand.mu", "demand.sigma", "demand.lo", "demand.hi"}) {
      r.reject(key, "is not used by exponential demand");
    }
    s.demand = DemandDistribution::exponential(r.number("demand.rate"));
  } else {
    fail(ErrorKind::ConfigParseError, std::string(source) + ": unknown demand kind '" + kind + "'");
  }

  s.m = r.number("market.m");
  s.gamma0 = r.number("market.gamma0");
  s.eta = r.number("market.eta");
  s.k = r.number("market.k");
  s.tau = r.number("tax.tau");
  s.tau0 = r.number("tax.tau0");
  s.alpha = r.number("policy.alpha");
  s.beta = r.number("policy.beta");
  s.reservation = r.optional_number("agent.reservation").value_or(0.0);
  s.solver.tol = r.optional_number("solver.tol").value_or(s.solver.tol);
  s.solver.max_iter = r.optional_integer("solver.max_iter").value_or(s.solver.max_iter);
  s.solver.grid_points = r.optional_integer("solver.grid_points").value_or(s.solver.grid_points);
  s.solver.damping = r.optional_number("solver.damping").value_or(s.solver.damping);

  validate(s);
  return s;
}

Scenario parse_config(const std::filesystem::path& path, std::span<const std::string> overrides) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), overrides, path.string());
}

std::string to_config_text(const Scenario& s) {
  std::ostringstream out;
  out.precision(17);
  out << "[demand]\nkind = " << to_string(s.demand.kind()) << '\n';
  switch (s.demand.kind()) {
    case DemandKind::Normal:
      out << "mu = " << s.demand.first() << "\nsigma = " << s.demand.second() << '\n';
      break;
    case DemandKind::Uniform:
      out << "lo = " << s.demand.first() << "\nhi = " << s.demand.second() << '\n';
      break;
    case DemandKind::Exponential: out << "rate = " << s.demand.first() << '\n'; break;
  }
  out << "\n[market]\nm = " << s.m << "\ngamma0 = " << s.gamma0 << "\neta = " << s.eta
      << "\nk = " << s.k << '\n';
  out << "\n[tax]\ntau = " << s.tau << "\ntau0 = " << s.tau0 << '\n';
  out << "\n[policy]\nalpha = " << s.alpha << "\nbeta = " << s.beta << '\n';
  out << "\n[agent]\nreservation = " << s.reservation << '\n';
  out << "\n[solver]\ntol = " << s.solver.tol << "\nmax_iter = " << s.solver.max_iter
      << "\ngrid_points = " << s.solver.grid_points << "\ndamping = " << s.solver.damping << '\n';
  return out.str();
}

}  // namespace taxchain
