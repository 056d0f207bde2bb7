#include "cuspsum/envelope.hpp"

#include <cmath>
#include <stdexcept>

#include "cuspsum/kernels.hpp"

namespace cuspsum {

namespace {

json bound_field(double bound) {
    if (bound == 0.0) return "exact";
    if (!std::isfinite(bound)) return "unbounded";
    return bound;
}

// A numeric leaf may only be the "value" or "bound" of a record, or the
// re/im component of a complex "value"; an object with "value" must carry
// "bound".
void lint_node(const json& node, const std::string& key, const std::string& parent_key,
               const std::string& path) {
    if (node.is_number()) {
        const bool ok = key == "value" || key == "bound" ||
                        ((key == "re" || key == "im") && parent_key == "value");
        if (!ok) throw std::logic_error("envelope lint: bare numeric at results" + path);
        return;
    }
    if (node.is_object()) {
        if (node.contains("value") && !node.contains("bound"))
            throw std::logic_error("envelope lint: value without bound at results" + path);
        for (auto it = node.begin(); it != node.end(); ++it)
            lint_node(it.value(), it.key(), key, path + "." + it.key());
    } else if (node.is_array()) {
        int i = 0;
        for (const auto& el : node)
            lint_node(el, key, parent_key, path + "[" + std::to_string(i++) + "]");
    }
}

}  // namespace

json bounded(double value, double bound, const std::string& note) {
    json j{{"value", value}, {"bound", bound_field(bound)}};
    if (!note.empty()) j["note"] = note;
    return j;
}

json bounded_exact(double value, const std::string& note) { return bounded(value, 0.0, note); }

json bounded_cplx(std::complex<double> value, double bound, const std::string& note) {
    json j{{"value", json{{"re", value.real()}, {"im", value.imag()}}},
           {"bound", bound_field(bound)}};
    if (!note.empty()) j["note"] = note;
    return j;
}

void lint_envelope(const json& envelope) {
    if (!envelope.contains("results")) throw std::logic_error("envelope lint: missing results");
    const json& res = envelope["results"];
    for (auto it = res.begin(); it != res.end(); ++it)
        lint_node(it.value(), it.key(), "", "." + it.key());
}

json make_envelope(const std::string& command, const json& config_echo) {
    json j;
    j["tool"] = json{{"name", "cuspsum"}, {"version", "1.0.0"}};
    j["command"] = command;
    j["config"] = config_echo;
    j["simd"] = kern::isa_name();
    j["results"] = json::object();
    return j;
}

}  // namespace cuspsum
