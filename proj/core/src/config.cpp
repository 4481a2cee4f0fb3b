#include "htb/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "htb/errors.hpp"

namespace htb {

namespace {

struct Entry {
  std::string value;
  int line;
  bool used = false;
};

using Section = std::map<std::string, Entry>;

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void fail(const std::string& section, const std::string& key,
                       const std::string& detail) {
  std::ostringstream msg;
  msg << "config error: [" << section << "] " << key;
  if (!detail.empty()) msg << ": " << detail;
  throw ConfigError(msg.str());
}

double parse_double(const std::string& section, const std::string& key, const Entry& e) {
  const char* begin = e.value.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || errno == ERANGE)
    fail(section, key, "'" + e.value + "' is not a number");
  return v;
}

std::uint64_t parse_u64(const std::string& section, const std::string& key, const Entry& e) {
  const char* begin = e.value.c_str();
  if (*begin == '-') fail(section, key, "'" + e.value + "' must be non-negative");
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(begin, &end, 10);
  if (end == begin || *end != '\0' || errno == ERANGE)
    fail(section, key, "'" + e.value + "' is not an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

/// Sections and the keys each one accepts; anything else is a typo.
const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"model",
       {"sigma", "kappa", "rho", "gamma", "alpha", "x_bar", "beta", "r", "lambda0", "s0", "x0",
        "lambda_max"}},
      {"risk_premium", {"variant", "c", "a", "b"}},
      {"grid", {"horizon", "n_steps"}},
      {"option", {"kind", "strike", "maturity"}},
      {"run", {"command", "n_paths", "master_seed", "measure", "output_path"}},
  };
  return keys;
}

class Document {
 public:
  explicit Document(std::string_view text) {
    std::string current;
    int line_no = 0;
    std::string line;
    std::istringstream in{std::string(text)};
    while (std::getline(in, line)) {
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      const std::string_view body = trim(line);
      if (body.empty()) continue;
      if (body.front() == '[') {
        if (body.back() != ']')
          throw ConfigError("config error: malformed section header at line " +
                            std::to_string(line_no));
        current = std::string(trim(body.substr(1, body.size() - 2)));
        if (!known_keys().count(current))
          throw ConfigError("config error: unknown section [" + current + "] at line " +
                            std::to_string(line_no));
        sections_.try_emplace(current);
        continue;
      }
      const auto eq = body.find('=');
      if (eq == std::string_view::npos)
        throw ConfigError("config error: expected 'key = value' at line " +
                          std::to_string(line_no));
      const std::string key{trim(body.substr(0, eq))};
      const std::string value{trim(body.substr(eq + 1))};
      if (current.empty())
        throw ConfigError("config error: key '" + key + "' outside any section at line " +
                          std::to_string(line_no));
      if (!known_keys().at(current).count(key))
        fail(current, key, "unknown key");
      auto [it, inserted] = sections_[current].try_emplace(key, Entry{value, line_no});
      if (!inserted)
        fail(current, key, "duplicate key (first at line " + std::to_string(it->second.line) +
                               ")");
    }
  }

  bool has_section(const std::string& section) const { return sections_.count(section) != 0; }

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return nullptr;
    const auto it = sec->second.find(key);
    if (it == sec->second.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  double get_double(const std::string& section, const std::string& key, double fallback) const {
    const Entry* e = find(section, key);
    return e ? parse_double(section, key, *e) : fallback;
  }

  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const {
    const Entry* e = find(section, key);
    return e ? parse_u64(section, key, *e) : fallback;
  }

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
  }

  /// Keys whose presence depends on another key's value (risk-premium
  /// coefficients) are checked here once the variant is known.
  void reject_unused(const std::string& section) const {
    const auto sec = sections_.find(section);
    if (sec == sections_.end()) return;
    for (const auto& [key, entry] : sec->second)
      if (!entry.used)
        fail(section, key, "not applicable to the selected variant");
  }

 private:
  mutable std::map<std::string, Section> sections_;
};

RiskPremiumSpec parse_risk_premium(const Document& doc) {
  const std::string variant = doc.get_string("risk_premium", "variant", "zero");
  RiskPremiumSpec spec = RiskPremiumSpec::zero();
  if (variant == "zero") {
    // no coefficients
  } else if (variant == "constant") {
    const Entry* c = doc.find("risk_premium", "c");
    if (!c) fail("risk_premium", "c", "required for variant=constant");
    spec = RiskPremiumSpec::constant(parse_double("risk_premium", "c", *c));
  } else if (variant == "affine_in_x") {
    const Entry* a = doc.find("risk_premium", "a");
    const Entry* b = doc.find("risk_premium", "b");
    if (!a) fail("risk_premium", "a", "required for variant=affine_in_x");
    if (!b) fail("risk_premium", "b", "required for variant=affine_in_x");
    spec = RiskPremiumSpec::affine_in_x(parse_double("risk_premium", "a", *a),
                                        parse_double("risk_premium", "b", *b));
  } else {
    fail("risk_premium", "variant",
         "'" + variant + "' is not one of zero | constant | affine_in_x");
  }
  doc.reject_unused("risk_premium");
  return spec;
}

Command parse_command(const std::string& value) {
  if (value == "simulate") return Command::kSimulate;
  if (value == "price") return Command::kPrice;
  if (value == "verify-measure") return Command::kVerifyMeasure;
  if (value == "verify-correlation") return Command::kVerifyCorrelation;
  fail("run", "command",
       "'" + value + "' is not one of simulate | price | verify-measure | verify-correlation");
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::kSimulate:
      return "simulate";
    case Command::kPrice:
      return "price";
    case Command::kVerifyMeasure:
      return "verify-measure";
    case Command::kVerifyCorrelation:
      return "verify-correlation";
  }
  return "?";
}

RunConfig parse_config(std::string_view text) {
  const Document doc(text);

  HtbParams params;
  params.sigma = doc.get_double("model", "sigma", params.sigma);
  params.kappa = doc.get_double("model", "kappa", params.kappa);
  params.rho = doc.get_double("model", "rho", params.rho);
  params.gamma = doc.get_double("model", "gamma", params.gamma);
  params.alpha = doc.get_double("model", "alpha", params.alpha);
  params.x_bar = doc.get_double("model", "x_bar", params.x_bar);
  params.beta = doc.get_double("model", "beta", params.beta);
  params.r = doc.get_double("model", "r", params.r);
  params.lambda0 = doc.get_double("model", "lambda0", params.lambda0);
  params.s0 = doc.get_double("model", "s0", params.s0);
  params.x0 = doc.get_double("model", "x0", params.x0);
  params.lambda_max = doc.get_double("model", "lambda_max", params.lambda_max);
  try {
    params.validate();
  } catch (const InvalidInputError& e) {
    throw ConfigError(std::string("config error: [model] ") + e.what());
  }

  const RiskPremiumSpec risk_premium = parse_risk_premium(doc);

  const double horizon = doc.get_double("grid", "horizon", 1.0);
  const std::uint64_t n_steps = doc.get_u64("grid", "n_steps", 500);
  if (n_steps < 1 || n_steps > 100'000'000) fail("grid", "n_steps", "out of range");
  RunConfig config{params,
                   risk_premium,
                   [&] {
                     try {
                       return PathGrid(horizon, static_cast<int>(n_steps), params.lambda_max);
                     } catch (const InvalidInputError& e) {
                       throw ConfigError(std::string("config error: [grid] ") + e.what());
                     }
                   }(),
                   std::nullopt,
                   0,
                   0,
                   Command::kSimulate,
                   Measure::kP,
                   ""};

  if (doc.has_section("option")) {
    const std::string kind = doc.get_string("option", "kind", "call");
    if (kind != "call" && kind != "put")
      fail("option", "kind", "'" + kind + "' is not one of call | put");
    OptionSpec option{kind == "call" ? OptionKind::kCall : OptionKind::kPut,
                      doc.get_double("option", "strike", 100.0),
                      doc.get_double("option", "maturity", config.grid.horizon)};
    try {
      option.validate();
    } catch (const InvalidInputError& e) {
      throw ConfigError(std::string("config error: [option] ") + e.what());
    }
    if (option.maturity > config.grid.horizon)
      fail("option", "maturity", "must not exceed the grid horizon");
    config.option = option;
  }

  config.command = parse_command(doc.get_string("run", "command", "simulate"));
  config.n_paths = doc.get_u64("run", "n_paths", 10'000);
  if (config.n_paths < 1) fail("run", "n_paths", "must be >= 1");
  config.master_seed = doc.get_u64("run", "master_seed", 42);
  const std::string measure = doc.get_string("run", "measure", "P");
  if (measure == "P")
    config.measure = Measure::kP;
  else if (measure == "Q")
    config.measure = Measure::kQ;
  else
    fail("run", "measure", "'" + measure + "' is not one of P | Q");
  config.output_path = doc.get_string("run", "output_path", "");

  if (config.command == Command::kPrice) {
    if (!config.option)
      throw ConfigError("config error: [option] section is required for command=price");
    if (config.option->maturity != config.grid.horizon)
      fail("option", "maturity", "must equal the grid horizon for command=price");
  }
  return config;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config error: cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace htb
