#include "fdcs/run_config.hpp"

#include <cstdio>

#include "fdcs/errors.hpp"

namespace fdcs {

namespace {

using nlohmann::json;

template <class T>
void put_optional(json& j, const char* key, const std::optional<T>& v) {
  j[key] = v ? json(*v) : json(nullptr);
}

template <class T>
void get_optional(const json& j, const char* key, std::optional<T>& v) {
  if (!j.contains(key) || j.at(key).is_null()) {
    v.reset();
  } else {
    v = j.at(key).get<T>();
  }
}

template <class T>
void get_if_present(const json& j, const char* key, T& v) {
  if (j.contains(key)) j.at(key).get_to(v);
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : keys) known = known || key == k;
    if (!known) throw DomainError("unknown key '" + key + "' in " + where);
  }
}

}  // namespace

void RunConfig::validate() const {
  const auto& v = model.variant;
  if (v != "harmonic" && v != "morse" && v != "mpt" && v != "tpt") {
    throw DomainError("model must be one of harmonic, morse, mpt, tpt (got '" + v + "')");
  }
  if (task != "spectrum" && task != "state" && task != "evolve" && task != "scan-alpha" && task != "verify") {
    throw DomainError("unknown task '" + task + "'");
  }
  if (state.kind != "aocs" && state.kind != "docs") throw DomainError("state kind must be aocs or docs");
  const auto& t = state.truncation;
  if (!t.empty() && t != "bound" && t != "block" && t != "adaptive") {
    throw DomainError("truncation must be bound, block or adaptive");
  }
  if (state.alpha_abs && state.target_mean_n) {
    throw DomainError("give either alpha or a target mean occupation, not both");
  }
  if (state.alpha_abs && !(*state.alpha_abs >= 0.0)) throw DomainError("alpha magnitude must be >= 0");
  if (state.target_mean_n && !(*state.target_mean_n >= 0.0)) throw DomainError("target mean occupation must be >= 0");
  if ((task == "state" || task == "evolve") && !state.alpha_abs && !state.target_mean_n) {
    throw DomainError("task '" + task + "' needs --alpha-abs or --target-mean-n");
  }
  if (grid.t_steps == 0) throw DomainError("t-steps must be positive");
  if (grid.t_max && !(*grid.t_max >= 0.0)) throw DomainError("t-max must be >= 0");
  if (grid.alpha_steps < 2) throw DomainError("alpha-steps must be at least 2");
  if (grid.alpha_max && !(*grid.alpha_max > 0.0)) throw DomainError("alpha-max must be positive");
  if (grid.levels == 0) throw DomainError("levels must be positive");
  if (output.format != "csv" && output.format != "json") throw DomainError("format must be csv or json");
  if (output.precision < 1 || output.precision > 17) throw DomainError("precision must lie in 1..17");
  (void)make_model(model);
}

void to_json(nlohmann::json& j, const RunConfig& c) {
  json model{{"variant", c.model.variant}, {"n_bound", c.model.n_bound}, {"s", c.model.s},
             {"lambda", c.model.lambda}, {"a", c.model.a}, {"mu", c.model.mu}, {"hbar", c.model.hbar}};
  put_optional(model, "omega", c.model.omega);
  json state{{"kind", c.state.kind},
             {"alpha_phase", c.state.alpha_phase},
             {"truncation", c.state.truncation},
             {"renormalize", c.state.renormalize}};
  put_optional(state, "alpha_abs", c.state.alpha_abs);
  put_optional(state, "target_mean_n", c.state.target_mean_n);
  json grid{{"t_steps", c.grid.t_steps}, {"alpha_steps", c.grid.alpha_steps}, {"levels", c.grid.levels}};
  put_optional(grid, "t_max", c.grid.t_max);
  put_optional(grid, "alpha_max", c.grid.alpha_max);
  json output{{"path", c.output.path}, {"format", c.output.format}, {"precision", c.output.precision}};
  j = json{{"task", c.task}, {"model", model}, {"state", state}, {"grid", grid}, {"output", output}};
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  reject_unknown(j, {"task", "model", "state", "grid", "output"}, "config");
  get_if_present(j, "task", c.task);
  if (j.contains("model")) {
    const auto& m = j.at("model");
    reject_unknown(m, {"variant", "n_bound", "s", "lambda", "omega", "a", "mu", "hbar"}, "model block");
    get_if_present(m, "variant", c.model.variant);
    get_if_present(m, "n_bound", c.model.n_bound);
    get_if_present(m, "s", c.model.s);
    get_if_present(m, "lambda", c.model.lambda);
    get_if_present(m, "a", c.model.a);
    get_if_present(m, "mu", c.model.mu);
    get_if_present(m, "hbar", c.model.hbar);
    if (m.contains("omega")) get_optional(m, "omega", c.model.omega);
  }
  if (j.contains("state")) {
    const auto& s = j.at("state");
    reject_unknown(s, {"kind", "alpha_abs", "alpha_phase", "target_mean_n", "truncation", "renormalize"},
                   "state block");
    get_if_present(s, "kind", c.state.kind);
    get_if_present(s, "alpha_phase", c.state.alpha_phase);
    get_if_present(s, "truncation", c.state.truncation);
    get_if_present(s, "renormalize", c.state.renormalize);
    if (s.contains("alpha_abs")) get_optional(s, "alpha_abs", c.state.alpha_abs);
    if (s.contains("target_mean_n")) get_optional(s, "target_mean_n", c.state.target_mean_n);
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    reject_unknown(g, {"t_max", "t_steps", "alpha_max", "alpha_steps", "levels"}, "grid block");
    get_if_present(g, "t_steps", c.grid.t_steps);
    get_if_present(g, "alpha_steps", c.grid.alpha_steps);
    get_if_present(g, "levels", c.grid.levels);
    if (g.contains("t_max")) get_optional(g, "t_max", c.grid.t_max);
    if (g.contains("alpha_max")) get_optional(g, "alpha_max", c.grid.alpha_max);
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    reject_unknown(o, {"path", "format", "precision"}, "output block");
    get_if_present(o, "path", c.output.path);
    get_if_present(o, "format", c.output.format);
    get_if_present(o, "precision", c.output.precision);
  }
}

std::string canonical_json(const RunConfig& c) { return json(c).dump(); }

std::string config_hash(const RunConfig& c) {
  std::uint64_t h = 14695981039346656037ULL;
  // The destination does not affect the result, so it stays out of the hash.
  RunConfig keyed = c;
  keyed.output.path.clear();
  for (const unsigned char ch : canonical_json(keyed)) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ModelParams make_model(const ModelBlock& m) {
  if (m.variant == "harmonic") return ModelParams::harmonic(m.omega.value_or(1.0), m.hbar);
  if (m.variant == "morse") return ModelParams::morse(m.n_bound, m.omega.value_or(1.0), m.hbar);
  if (m.variant == "mpt") return ModelParams::modified_pt(m.s, m.a, m.mu, m.omega, m.hbar);
  if (m.variant == "tpt") return ModelParams::trig_pt(m.lambda, m.a, m.mu, m.omega, m.hbar);
  throw DomainError("unknown model variant '" + m.variant + "'");
}

Truncation make_truncation(const StateBlock& s, const ModelParams& model) {
  if (s.truncation.empty()) return default_truncation(model);
  if (s.truncation == "bound") return Truncation::bound_only();
  if (s.truncation == "block") return Truncation::full_block();
  return Truncation::adaptive();
}

StateKind make_state_kind(const StateBlock& s) { return s.kind == "aocs" ? StateKind::Aocs : StateKind::Docs; }

}  // namespace fdcs
