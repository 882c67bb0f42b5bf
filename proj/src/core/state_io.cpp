#include "anonq/state_io.hpp"

#include <cmath>

namespace anonq {

namespace {

std::string index_bits(std::size_t index, int qubits) {
    std::string s(static_cast<std::size_t>(qubits), '0');
    for (int q = 0; q < qubits; ++q) {
        if (index & (std::size_t{1} << (qubits - 1 - q))) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

}  // namespace

nlohmann::json complex_to_json(const cplx& v) {
    return {{"re", v.real()}, {"im", v.imag()}};
}

nlohmann::json state_to_json(const StateVector& state) {
    const auto& layout = state.layout();
    const int qubits = layout.n_processors * layout.qubits_per_processor;
    nlohmann::json amps = nlohmann::json::array();
    for (std::size_t b = 0; b < state.dim(); ++b) {
        if (std::abs(state[b]) <= tol::phase_floor) continue;
        amps.push_back({{"index", b},
                        {"bits", index_bits(b, qubits)},
                        {"re", state[b].real()},
                        {"im", state[b].imag()}});
    }
    return {{"n", layout.n_processors},
            {"m", layout.qubits_per_processor},
            {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const nlohmann::json& j) {
    if (!j.contains("n") || !j.contains("m") || !j.contains("amplitudes")) {
        throw InvalidParameter("state JSON requires n, m and amplitudes");
    }
    const int n = j.at("n").get<int>();
    const int m = j.at("m").get<int>();
    ProcessorLayout layout(n, m);
    const int qubits = n * m;
    std::vector<cplx> amps(layout.dim(), cplx{0.0, 0.0});
    for (const auto& entry : j.at("amplitudes")) {
        std::size_t index = 0;
        if (entry.contains("index")) {
            index = entry.at("index").get<std::size_t>();
        } else if (entry.contains("bits")) {
            const std::string bits = entry.at("bits").get<std::string>();
            if (bits.size() != static_cast<std::size_t>(qubits)) {
                throw InvalidParameter("bits length does not match n*m");
            }
            for (char c : bits) {
                if (c != '0' && c != '1') {
                    throw InvalidParameter("bits must be a 0/1 string");
                }
                index = (index << 1) | static_cast<std::size_t>(c - '0');
            }
        } else {
            throw InvalidParameter("amplitude entry needs an index or bits");
        }
        if (index >= amps.size()) {
            throw InvalidParameter("amplitude index out of range");
        }
        amps[index] = cplx{entry.value("re", 0.0), entry.value("im", 0.0)};
    }
    return StateVector(layout, std::move(amps));
}

std::string state_to_json_string(const StateVector& state) {
    return state_to_json(state).dump(2);
}

StateVector state_from_json_string(const std::string& text) {
    return state_from_json(nlohmann::json::parse(text));
}

}  // namespace anonq
