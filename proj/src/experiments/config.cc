#include "v1sim/experiments/config.h"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

#include "v1sim/sim/errors.h"

namespace v1sim::experiments {

namespace {

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r'; };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

struct Quantity {
  double value;
  std::string_view unit;
};

Quantity split_quantity(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || text.empty()) throw ConfigError(fmt::format("'{}' is not a number", text));
  if (!std::isfinite(v)) throw ConfigError(fmt::format("'{}' is not finite", text));
  if (v < 0) throw ConfigError(fmt::format("'{}' must not be negative", text));
  return {v, trim(std::string_view(ptr, text.data() + text.size() - ptr))};
}

double scaled(std::string_view text, std::initializer_list<std::pair<std::string_view, double>> units,
              std::string_view what) {
  const Quantity q = split_quantity(text);
  if (q.unit.empty()) {
    if (q.value == 0.0) return 0.0;
    throw ConfigError(fmt::format("'{}' is missing a {} unit", trim(text), what));
  }
  for (const auto& [name, scale] : units) {
    if (q.unit == name) return q.value * scale;
  }
  throw ConfigError(fmt::format("unknown {} unit '{}'", what, q.unit));
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const size_t comma = text.find(',');
    out.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

uint64_t parse_count(std::string_view text) {
  text = trim(text);
  uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError(fmt::format("'{}' is not a non-negative integer", text));
  }
  return v;
}

double parse_real(std::string_view text) {
  const Quantity q = split_quantity(text);
  if (!q.unit.empty()) throw ConfigError(fmt::format("'{}' takes no unit", trim(text)));
  return q.value;
}

bool parse_bool(std::string_view text) {
  text = trim(text);
  if (text == "on" || text == "true" || text == "yes") return true;
  if (text == "off" || text == "false" || text == "no") return false;
  throw ConfigError(fmt::format("'{}' is not on/off", text));
}

Mode parse_mode(std::string_view text) {
  text = trim(text);
  if (text == "pon") return Mode::kPon;
  if (text == "b2b") return Mode::kB2B;
  throw ConfigError(fmt::format("'{}' is not a mode (pon, b2b)", text));
}

std::string fmt_rate(double v) { return fmt::format("{}bps", v); }
std::string fmt_time(SimTime t) { return fmt::format("{}ns", t.ns()); }

struct KeySpec {
  std::string_view name;
  std::function<void(ScenarioConfig&, std::string_view)> set;
  std::function<std::string(const ScenarioConfig&)> get;
};

template <typename M>
KeySpec rate_key(std::string_view name, M ScenarioConfig::*m) {
  return {name, [m](ScenarioConfig& c, std::string_view v) { c.*m = parse_rate(v); },
          [m](const ScenarioConfig& c) { return fmt_rate(c.*m); }};
}

KeySpec time_key(std::string_view name, SimTime ScenarioConfig::*m) {
  return {name, [m](ScenarioConfig& c, std::string_view v) { c.*m = parse_time(v); },
          [m](const ScenarioConfig& c) { return fmt_time(c.*m); }};
}

template <typename M>
M narrow(uint64_t v) {
  if (v > std::numeric_limits<M>::max()) throw ConfigError(fmt::format("{} is out of range", v));
  return static_cast<M>(v);
}

template <typename M>
KeySpec bytes_key(std::string_view name, M ScenarioConfig::*m) {
  return {name, [m](ScenarioConfig& c, std::string_view v) { c.*m = narrow<M>(parse_bytes(v)); },
          [m](const ScenarioConfig& c) { return fmt::format("{}B", c.*m); }};
}

template <typename M>
KeySpec count_key(std::string_view name, M ScenarioConfig::*m) {
  return {name, [m](ScenarioConfig& c, std::string_view v) { c.*m = narrow<M>(parse_count(v)); },
          [m](const ScenarioConfig& c) { return fmt::format("{}", c.*m); }};
}

KeySpec bool_key(std::string_view name, bool ScenarioConfig::*m) {
  return {name, [m](ScenarioConfig& c, std::string_view v) { c.*m = parse_bool(v); },
          [m](const ScenarioConfig& c) { return std::string(c.*m ? "on" : "off"); }};
}

KeySpec mode_key(std::string_view name, Mode ScenarioConfig::*m) {
  return {name, [m](ScenarioConfig& c, std::string_view v) { c.*m = parse_mode(v); },
          [m](const ScenarioConfig& c) { return std::string(mode_name(c.*m)); }};
}

KeySpec rate_list_key(std::string_view name, std::vector<double> ScenarioConfig::*m) {
  return {name,
          [m](ScenarioConfig& c, std::string_view v) {
            std::vector<double> out;
            for (auto item : split_list(v)) out.push_back(parse_rate(item));
            c.*m = std::move(out);
          },
          [m](const ScenarioConfig& c) {
            std::vector<std::string> parts;
            for (double r : c.*m) parts.push_back(fmt_rate(r));
            return fmt::format("{}", fmt::join(parts, ","));
          }};
}

KeySpec time_list_key(std::string_view name, std::vector<SimTime> ScenarioConfig::*m) {
  return {name,
          [m](ScenarioConfig& c, std::string_view v) {
            std::vector<SimTime> out;
            for (auto item : split_list(v)) out.push_back(parse_time(item));
            c.*m = std::move(out);
          },
          [m](const ScenarioConfig& c) {
            std::vector<std::string> parts;
            for (SimTime t : c.*m) parts.push_back(fmt_time(t));
            return fmt::format("{}", fmt::join(parts, ","));
          }};
}

const std::vector<KeySpec>& key_table() {
  using C = ScenarioConfig;
  static const std::vector<KeySpec> table = [] {
    std::vector<KeySpec> t = {
        count_key("seed", &C::seed),
        mode_key("mode", &C::mode),
        rate_key("mobile.rate", &C::mobile_rate_bps),
        bytes_key("mobile.packet_size", &C::mobile_packet_bytes),
        time_key("mobile.ramp", &C::mobile_ramp),
        time_key("mobile.start", &C::mobile_start),
        rate_key("overload.uplink_rate", &C::overload_uplink_bps),
        rate_key("overload.downlink_rate", &C::overload_downlink_bps),
        bytes_key("overload.packet_size", &C::overload_packet_bytes),
        {"degrade.mean", [](C& c, std::string_view v) { c.degrade.mean_latency = parse_time(v); },
         [](const C& c) { return fmt_time(c.degrade.mean_latency); }},
        {"degrade.sigma", [](C& c, std::string_view v) { c.degrade.jitter_sigma = parse_time(v); },
         [](const C& c) { return fmt_time(c.degrade.jitter_sigma); }},
        {"degrade.floor", [](C& c, std::string_view v) { c.degrade.min_latency_floor = parse_time(v); },
         [](const C& c) { return fmt_time(c.degrade.min_latency_floor); }},
        bool_key("degrade.downlink", &C::degrade_downlink),
        bool_key("degrade.uplink", &C::degrade_uplink),
        rate_key("switch.rate", &C::switch_rate_bps),
        bytes_key("switch.buffer", &C::switch_buffer_bytes),
        count_key("vlan.mobile", &C::vlan_mobile),
        count_key("vlan.overload", &C::vlan_overload),
        rate_key("pon.line_rate", &C::pon_line_rate_bps),
        rate_key("pon.capacity", &C::pon_capacity_bps),
        time_key("pon.cycle", &C::pon_cycle),
        time_key("pon.ema_tau", &C::pon_ema_tau),
        rate_key("pon.assured", &C::pon_assured_mobile_bps),
        rate_key("pon.assured_overload", &C::pon_assured_overload_bps),
        bytes_key("pon.tcont_queue", &C::pon_tcont_queue_bytes),
        bool_key("pon.fragmentation", &C::pon_fragmentation),
        bytes_key("pon.downstream_buffer", &C::pon_downstream_buffer_bytes),
        {"fiber.length", [](C& c, std::string_view v) { c.fiber_length_km = parse_length_km(v); },
         [](const C& c) { return fmt::format("{}km", c.fiber_length_km); }},
        {"fiber.group_index", [](C& c, std::string_view v) { c.fiber_group_index = parse_real(v); },
         [](const C& c) { return fmt::format("{}", c.fiber_group_index); }},
        time_key("host.base", &C::host_base),
        time_key("host.jitter", &C::host_jitter),
        time_key("du.deadline", &C::du_deadline),
        count_key("du.capacity", &C::du_capacity),
        rate_key("budget.rate", &C::budget_rate_bps),
        count_key("budget.depth", &C::budget_depth),
        mode_key("fig3.mode", &C::fig3_mode),
        rate_list_key("fig3.rates", &C::fig3_rates_bps),
        time_list_key("fig3.sigmas", &C::fig3_sigmas),
        count_key("fig3.packets", &C::fig3_packets),
        time_key("fig3.max_duration", &C::fig3_max_duration),
        bool_key("fig3.overload", &C::fig3_overload),
        rate_list_key("fig4.rates", &C::fig4_rates_bps),
        time_key("fig4.duration", &C::fig4_duration),
        time_key("fig4.window", &C::fig4_window),
        time_key("fig4.step", &C::fig4_step),
        time_key("fig4.hold", &C::fig4_hold),
        count_key("tab1.probes", &C::tab1_probes),
        time_key("tab1.period", &C::tab1_period),
        bytes_key("tab1.probe_size", &C::tab1_probe_bytes),
        rate_key("tab1.mobile_rate", &C::tab1_mobile_rate_bps),
        bool_key("tab1.overload", &C::tab1_overload),
        bool_key("tab1.degrade", &C::tab1_degrade),
    };
    std::sort(t.begin(), t.end(), [](const KeySpec& a, const KeySpec& b) { return a.name < b.name; });
    return t;
  }();
  return table;
}

const KeySpec* find_key(std::string_view name) {
  const auto& t = key_table();
  auto it = std::lower_bound(t.begin(), t.end(), name, [](const KeySpec& k, std::string_view n) { return k.name < n; });
  return it != t.end() && it->name == name ? &*it : nullptr;
}

void apply(ScenarioConfig& cfg, std::string_view line, int line_no, std::map<std::string, int, std::less<>>& seen,
           std::vector<Diagnostic>& diags) {
  const size_t eq = line.find('=');
  if (eq == std::string_view::npos) {
    diags.push_back({line_no, "", fmt::format("expected 'key = value', got '{}'", line)});
    return;
  }
  const std::string key(trim(line.substr(0, eq)));
  const std::string_view value = trim(line.substr(eq + 1));
  const KeySpec* spec = find_key(key);
  if (!spec) {
    diags.push_back({line_no, key, "unknown key"});
    return;
  }
  if (value.empty()) {
    diags.push_back({line_no, key, "missing value"});
    return;
  }
  try {
    spec->set(cfg, value);
    seen[key] = line_no;
  } catch (const ConfigError& e) {
    diags.push_back({line_no, key, e.what()});
  }
}

}  // namespace

std::string_view mode_name(Mode m) { return m == Mode::kPon ? "pon" : "b2b"; }

std::string format_diagnostic(const Diagnostic& d, std::string_view source) {
  std::string where = d.line > 0 ? fmt::format("{}:{}", source, d.line) : std::string(source);
  if (d.key.empty()) return fmt::format("{}: {}", where, d.message);
  return fmt::format("{}: {}: {}", where, d.key, d.message);
}

double parse_rate(std::string_view text) {
  return scaled(text,
                {{"bps", 1.0}, {"b/s", 1.0}, {"kbps", 1e3}, {"kb/s", 1e3}, {"Mbps", 1e6}, {"Mb/s", 1e6},
                 {"Gbps", 1e9}, {"Gb/s", 1e9}},
                "rate");
}

SimTime parse_time(std::string_view text) {
  return SimTime::from_seconds(scaled(text, {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}, "time"));
}

uint64_t parse_bytes(std::string_view text) {
  const double v = scaled(text, {{"B", 1.0}, {"kB", 1e3}, {"MB", 1e6}, {"GB", 1e9}}, "size");
  const double r = std::round(v);
  if (std::abs(v - r) > 1e-6) throw ConfigError(fmt::format("'{}' is not a whole number of bytes", trim(text)));
  return static_cast<uint64_t>(r);
}

double parse_length_km(std::string_view text) { return scaled(text, {{"m", 1e-3}, {"km", 1.0}}, "length"); }

std::vector<Diagnostic> validate(const ScenarioConfig& c) {
  std::vector<Diagnostic> d;
  const auto need = [&d](bool ok, std::string_view key, std::string msg) {
    if (!ok) d.push_back({0, std::string(key), std::move(msg)});
  };
  need(c.mobile_rate_bps > 0, "mobile.rate", "must be > 0");
  need(c.mobile_packet_bytes > 0, "mobile.packet_size", "must be > 0");
  need(c.overload_packet_bytes > 0, "overload.packet_size", "must be > 0");
  need(c.switch_rate_bps > 0, "switch.rate", "must be > 0");
  need(c.overload_downlink_bps < c.switch_rate_bps, "overload.downlink_rate", "must be below switch.rate");
  need(c.overload_downlink_bps < c.pon_line_rate_bps, "overload.downlink_rate", "must be below pon.line_rate");
  need(c.vlan_mobile >= 1 && c.vlan_mobile <= 4094, "vlan.mobile", "must be in 1..4094");
  need(c.vlan_overload >= 1 && c.vlan_overload <= 4094, "vlan.overload", "must be in 1..4094");
  need(c.vlan_mobile != c.vlan_overload, "vlan.overload", "must differ from vlan.mobile");
  need(c.pon_line_rate_bps > 0, "pon.line_rate", "must be > 0");
  need(c.pon_capacity_bps > 0, "pon.capacity", "must be > 0");
  need(c.pon_capacity_bps <= c.pon_line_rate_bps, "pon.capacity", "must not exceed pon.line_rate");
  need(c.pon_assured_mobile_bps + c.pon_assured_overload_bps <= c.pon_capacity_bps, "pon.assured",
       "assured rates exceed pon.capacity");
  need(c.pon_cycle > SimTime(), "pon.cycle", "must be > 0");
  need(c.pon_ema_tau >= c.pon_cycle, "pon.ema_tau", "must be at least one pon.cycle");
  need(c.pon_tcont_queue_bytes > 0, "pon.tcont_queue", "must be > 0");
  need(c.fiber_group_index >= 1.0, "fiber.group_index", "must be >= 1");
  need(c.du_capacity >= 1, "du.capacity", "must be >= 1");
  need(c.budget_rate_bps > 0, "budget.rate", "must be > 0");
  need(c.budget_depth >= 1, "budget.depth", "must be >= 1");
  need(!c.fig3_rates_bps.empty(), "fig3.rates", "must not be empty");
  for (double r : c.fig3_rates_bps) need(r > 0, "fig3.rates", "every rate must be > 0");
  need(!c.fig3_sigmas.empty(), "fig3.sigmas", "must not be empty");
  need(c.fig3_packets >= 1, "fig3.packets", "must be >= 1");
  need(!c.fig4_rates_bps.empty(), "fig4.rates", "must not be empty");
  for (double r : c.fig4_rates_bps) need(r > 0, "fig4.rates", "every rate must be > 0");
  need(c.fig4_window > SimTime(), "fig4.window", "must be > 0");
  need(c.fig4_step > SimTime() && c.fig4_step <= c.fig4_window, "fig4.step", "must be in (0, fig4.window]");
  need(c.fig4_duration >= c.pon_ema_tau * 10, "fig4.duration", "must be at least 10 x pon.ema_tau");
  need(c.fig4_duration > c.mobile_start + c.mobile_ramp + c.fig4_hold, "fig4.duration",
       "must extend past mobile.start + mobile.ramp + fig4.hold");
  need(c.tab1_probes >= 2, "tab1.probes", "must be >= 2");
  need(c.tab1_period > SimTime(), "tab1.period", "must be > 0");
  need(c.tab1_probe_bytes > 0, "tab1.probe_size", "must be > 0");
  need(c.tab1_mobile_rate_bps > 0, "tab1.mobile_rate", "must be > 0");
  need(c.mobile_start + c.tab1_period * static_cast<int64_t>(c.tab1_probes) >= c.pon_ema_tau * 10, "tab1.probes",
       "probe run must last at least 10 x pon.ema_tau");
  return d;
}

ParseResult parse_config(std::string_view text, const std::vector<std::string>& overrides) {
  ParseResult r;
  std::map<std::string, int, std::less<>> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view() : text.substr(nl + 1);
    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    apply(r.config, line, line_no, seen, r.diagnostics);
  }
  for (const std::string& o : overrides) apply(r.config, trim(o), 0, seen, r.diagnostics);
  for (Diagnostic& d : validate(r.config)) {
    if (auto it = seen.find(d.key); it != seen.end()) d.line = it->second;
    r.diagnostics.push_back(std::move(d));
  }
  return r;
}

ParseResult load_config(const std::string& path, const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) {
    ParseResult r;
    r.diagnostics.push_back({0, "", "cannot open file"});
    return r;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), overrides);
}

std::string canonical_dump(const ScenarioConfig& cfg) {
  std::string out;
  for (const KeySpec& k : key_table()) out += fmt::format("{}={}\n", k.name, k.get(cfg));
  return out;
}

std::string config_hash(const ScenarioConfig& cfg) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical_dump(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

}  // namespace v1sim::experiments
