// Copyright 2026 The qbot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qbot/qbot.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "json.hpp"
#include "qbot/controller.h"
#include "qbot/decompose.h"
#include "qbot/error.h"
#include "qbot/protocol.h"
#include "qbot/qasm.h"
#include "qbot/qsim.h"
#include "qbot/server.h"
#include "qbot/session.h"

struct qbot_circuit {
    qbot::Circuit circuit;
};

struct qbot_episode {
    qbot::Episode episode;
};

struct qbot_protocol {
    qbot::ProtocolSession session;
};

struct qbot_server {
    std::unique_ptr<qbot::Server> server;
};

namespace {

thread_local std::string last_error;

qbot_status set_error(qbot_status status, const std::string &message) {
    last_error = message;
    return status;
}

/// Runs `body`, translating exceptions into status codes.
template <typename Body>
qbot_status guarded(Body &&body) {
    try {
        body();
        return QBOT_OK;
    } catch (const qbot::Error &e) {
        return set_error(static_cast<qbot_status>(e.code()), e.what());
    } catch (const nlohmann::json::exception &e) {
        return set_error(QBOT_ERR_PARSE, e.what());
    } catch (const std::bad_alloc &) {
        return set_error(QBOT_ERR_CAPACITY, "out of memory");
    } catch (const std::exception &e) {
        return set_error(QBOT_ERR_INTERNAL, e.what());
    }
}

char *owned_string(const std::string &s) {
    char *out = static_cast<char *>(std::malloc(s.size() + 1));
    if (out == nullptr) {
        throw std::bad_alloc();
    }
    std::memcpy(out, s.data(), s.size());
    out[s.size()] = '\0';
    return out;
}

void require(bool condition, const char *message) {
    if (!condition) {
        throw qbot::Error(qbot::ErrorCode::InvalidArgument, message);
    }
}

void copy_fixed(char *dst, const std::string &src, size_t capacity) {
    std::strncpy(dst, src.c_str(), capacity - 1);
    dst[capacity - 1] = '\0';
}

qbot_status wrap_circuit(qbot::Circuit circuit, qbot_circuit **out) {
    *out = new qbot_circuit{std::move(circuit)};
    return QBOT_OK;
}

std::vector<qbot::QubitId> qubit_list(const nlohmann::json &j, size_t expected, const char *field) {
    if (!j.is_array() || (expected != 0 && j.size() != expected)) {
        throw qbot::Error(qbot::ErrorCode::Parse, std::string("register field '") + field + "' has the wrong shape");
    }
    std::vector<qbot::QubitId> out;
    for (const auto &v : j) {
        out.emplace_back(v.get<uint32_t>());
    }
    return out;
}

qbot::EpisodeConfig to_config(const qbot_episode_config *config) {
    require(config != nullptr && config->map_text != nullptr, "episode config needs map_text");
    qbot::EpisodeConfig c;
    c.map_text = config->map_text;
    c.max_steps = config->max_steps < 0 ? qbot::DEFAULT_MAX_STEPS : static_cast<size_t>(config->max_steps);
    c.policy = qbot::AskPolicy::parse(config->policy ? config->policy : "interactive");
    c.seed = config->seed;
    return c;
}

}  // namespace

extern "C" {

const char *qbot_version(void) {
    return "0.1.0";
}

const char *qbot_status_name(qbot_status status) {
    if (status == QBOT_OK) {
        return "ok";
    }
    if (status == QBOT_ERR_INTERNAL) {
        return "internal";
    }
    static thread_local std::string name;
    name = std::string(qbot::error_code_name(static_cast<qbot::ErrorCode>(status)));
    return name.c_str();
}

const char *qbot_last_error(void) {
    return last_error.c_str();
}

void qbot_string_free(char *str) {
    std::free(str);
}

qbot_status qbot_controller_circuit(int lowered, int omit_segment, qbot_circuit **out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        qbot::SynthesisOptions options;
        if (omit_segment >= 0) {
            require(omit_segment < 16, "omit_segment must be below 16");
            options.omit_segment = static_cast<uint32_t>(omit_segment);
        }
        wrap_circuit(qbot::vehicle_controller(lowered != 0, options), out);
    });
}

qbot_status qbot_controller_from_table(const char *table_text, int lowered, qbot_circuit **out) {
    return guarded([&] {
        require(table_text != nullptr && out != nullptr, "null argument");
        auto table = qbot::parse_truth_table(table_text);
        if (table.inputs != 4 || table.outputs != 6) {
            throw qbot::Error(qbot::ErrorCode::Structural, "controller tables need 4 inputs and 6 outputs");
        }
        auto c = qbot::synthesize(table, qbot::RegisterMap::vehicle(), 13);
        wrap_circuit(lowered ? qbot::lower_circuit(c) : std::move(c), out);
    });
}

qbot_status qbot_mcx_plan(int k, qbot_circuit **out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        require(k >= 0 && k <= 16, "k must be in [0, 16]");
        wrap_circuit(qbot::mcx_plan_circuit(static_cast<size_t>(k)), out);
    });
}

qbot_status qbot_circuit_parse_qasm(const char *text, qbot_circuit **out) {
    return guarded([&] {
        require(text != nullptr && out != nullptr, "null argument");
        wrap_circuit(qbot::from_qasm(text), out);
    });
}

qbot_status qbot_circuit_to_qasm(const qbot_circuit *circuit, char **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        *out = owned_string(qbot::to_qasm(circuit->circuit));
    });
}

qbot_status qbot_circuit_info_get(const qbot_circuit *circuit, qbot_circuit_info *out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        const auto &c = circuit->circuit;
        out->num_qubits = c.num_qubits();
        out->num_gates = c.gates().size();
        out->max_controls = c.max_controls();
        out->native = c.is_native() ? 1 : 0;
        out->has_registers = c.registers() ? 1 : 0;
    });
}

qbot_status qbot_circuit_set_registers_json(qbot_circuit *circuit, const char *json) {
    return guarded([&] {
        require(circuit != nullptr && json != nullptr, "null argument");
        auto j = nlohmann::json::parse(json);
        if (!j.is_object()) {
            throw qbot::Error(qbot::ErrorCode::Parse, "register map must be a JSON object");
        }
        qbot::RegisterMap r;
        auto sensors = qubit_list(j.at("sensors"), 4, "sensors");
        std::copy(sensors.begin(), sensors.end(), r.sensors.begin());
        r.ancillas = qubit_list(j.value("ancillas", nlohmann::json::array()), 0, "ancillas");
        auto ml = qubit_list(j.at("ml"), 2, "ml");
        auto mr = qubit_list(j.at("mr"), 2, "mr");
        r.ml = {ml[0], ml[1]};
        r.mr = {mr[0], mr[1]};
        r.mu = qbot::QubitId(j.at("mu").get<uint32_t>());
        r.ask = qbot::QubitId(j.at("ask").get<uint32_t>());
        circuit->circuit.set_registers(std::move(r));
    });
}

qbot_status qbot_circuit_registers_json(const qbot_circuit *circuit, char **out) {
    return guarded([&] {
        require(circuit != nullptr && out != nullptr, "null argument");
        if (!circuit->circuit.registers()) {
            throw qbot::Error(qbot::ErrorCode::State, "circuit has no register map");
        }
        const auto &r = *circuit->circuit.registers();
        auto list = [](auto begin, auto end) {
            nlohmann::ordered_json a = nlohmann::ordered_json::array();
            for (auto it = begin; it != end; ++it) {
                a.push_back(it->index);
            }
            return a;
        };
        nlohmann::ordered_json j;
        j["sensors"] = list(r.sensors.begin(), r.sensors.end());
        j["ancillas"] = list(r.ancillas.begin(), r.ancillas.end());
        j["ml"] = list(r.ml.begin(), r.ml.end());
        j["mr"] = list(r.mr.begin(), r.mr.end());
        j["mu"] = r.mu.index;
        j["ask"] = r.ask.index;
        *out = owned_string(j.dump() + "\n");
    });
}

qbot_status qbot_circuit_run_basis(const qbot_circuit *circuit, const char *input_bits, char **output_bits) {
    return guarded([&] {
        require(circuit != nullptr && input_bits != nullptr && output_bits != nullptr, "null argument");
        auto result = qbot::run_basis(circuit->circuit, qbot::BasisState::from_string(input_bits));
        *output_bits = owned_string(result.to_string());
    });
}

qbot_status qbot_circuit_run_statevector(
    const qbot_circuit *circuit, const char *input_bits, uint64_t seed, char **output_bits) {
    return guarded([&] {
        require(circuit != nullptr && input_bits != nullptr && output_bits != nullptr, "null argument");
        auto input = qbot::BasisState::from_string(input_bits);
        if (input.size() != circuit->circuit.num_qubits()) {
            throw qbot::Error(qbot::ErrorCode::Structural, "input width does not match the circuit");
        }
        auto state = qbot::StateVector::from_basis(input);
        state.apply(circuit->circuit);
        *output_bits = owned_string(qbot::measure_all(state, seed).to_string());
    });
}

qbot_status qbot_circuit_actuator_string(const qbot_circuit *circuit, const char *register_bits, char out[7]) {
    return guarded([&] {
        require(circuit != nullptr && register_bits != nullptr && out != nullptr, "null argument");
        if (!circuit->circuit.registers()) {
            throw qbot::Error(qbot::ErrorCode::State, "circuit has no register map");
        }
        auto bits = qbot::BasisState::from_string(register_bits);
        copy_fixed(out, qbot::actuator_string(*circuit->circuit.registers(), bits), 7);
    });
}

qbot_status qbot_controller_evaluate(const qbot_circuit *circuit, const char *sensors, char out[7]) {
    return guarded([&] {
        require(circuit != nullptr && sensors != nullptr && out != nullptr, "null argument");
        auto outcome = qbot::evaluate(circuit->circuit, qbot::SensorWord::from_string(sensors));
        copy_fixed(out, qbot::format_table_iv(outcome), 7);
    });
}

void qbot_circuit_free(qbot_circuit *circuit) {
    delete circuit;
}

qbot_status qbot_verify_controller(const qbot_circuit *circuit, qbot_verify_row rows[16], int *passed) {
    // Reference row order: no clear side, single clear sides, then multi-clear.
    static const char *const ORDER[16] = {"0000", "0001", "0010", "0100", "1000", "1100", "1010", "1001",
                                          "0101", "0110", "0011", "1110", "1101", "1011", "0111", "1111"};
    return guarded([&] {
        require(circuit != nullptr && rows != nullptr && passed != nullptr, "null argument");
        auto table = qbot::builtin_table();
        *passed = 0;
        for (size_t i = 0; i < 16; i++) {
            auto word = qbot::SensorWord::from_string(ORDER[i]);
            auto expected = qbot::format_table_iv(qbot::decode_outputs(table.at(word.index())));
            std::string computed;
            try {
                computed = qbot::format_table_iv(qbot::evaluate(circuit->circuit, word));
            } catch (const qbot::Error &e) {
                if (e.code() != qbot::ErrorCode::CorruptController) {
                    throw;
                }
                computed = "??????";
            }
            auto &row = rows[i];
            copy_fixed(row.sensors, ORDER[i], sizeof(row.sensors));
            copy_fixed(row.expected, expected, sizeof(row.expected));
            copy_fixed(row.computed, computed, sizeof(row.computed));
            row.pass = expected == computed ? 1 : 0;
            *passed += row.pass;
        }
    });
}

qbot_status qbot_verify_mcx(int k, qbot_mcx_report *out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        require(k >= 0, "k must be non-negative");
        auto report = qbot::verify_equivalence(static_cast<size_t>(k));
        out->k = k;
        out->ancillas = static_cast<int>(report.ancillas_used);
        out->ccx = static_cast<int>(report.ccx_count);
        out->cx = static_cast<int>(report.cx_count);
        out->cases = static_cast<int>(report.cases);
        out->matches = static_cast<int>(report.matches);
        out->passed = report.passed() ? 1 : 0;
        copy_fixed(out->counterexample, report.counterexample.value_or(""), sizeof(out->counterexample));
    });
}

qbot_status qbot_episode_start(const qbot_episode_config *config, qbot_episode **out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new qbot_episode{qbot::Episode(to_config(config))};
    });
}

qbot_status qbot_episode_step(qbot_episode *episode, char **message) {
    return guarded([&] {
        require(episode != nullptr && message != nullptr, "null argument");
        auto r = episode->episode.advance();
        if (auto *rec = std::get_if<qbot::TraceRecord>(&r)) {
            *message = owned_string(qbot::record_message(*rec));
        } else {
            *message = owned_string(qbot::ask_message(std::get<qbot::AskRequest>(r)));
        }
    });
}

qbot_status qbot_episode_answer(qbot_episode *episode, char direction, char **record) {
    return guarded([&] {
        require(episode != nullptr && record != nullptr, "null argument");
        auto d = qbot::direction_from_char(direction);
        require(d.has_value(), "direction must be one of F, B, L, R");
        *record = owned_string(qbot::record_message(episode->episode.answer(*d)));
    });
}

qbot_status qbot_episode_status(const qbot_episode *episode, char **status) {
    return guarded([&] {
        require(episode != nullptr && status != nullptr, "null argument");
        *status = owned_string(std::string(qbot::episode_status_name(episode->episode.status())));
    });
}

qbot_status qbot_episode_trace_jsonl(const qbot_episode *episode, char **jsonl) {
    return guarded([&] {
        require(episode != nullptr && jsonl != nullptr, "null argument");
        *jsonl = owned_string(qbot::trace_to_jsonl(episode->episode.trace()));
    });
}

qbot_status qbot_episode_render(const qbot_episode *episode, char **map_text) {
    return guarded([&] {
        require(episode != nullptr && map_text != nullptr, "null argument");
        *map_text = owned_string(qbot::render(episode->episode.map(), episode->episode.pose()));
    });
}

void qbot_episode_free(qbot_episode *episode) {
    delete episode;
}

qbot_status qbot_run_episode(const qbot_episode_config *config, char **trace_jsonl) {
    return guarded([&] {
        require(trace_jsonl != nullptr, "null argument");
        *trace_jsonl = owned_string(qbot::trace_to_jsonl(qbot::run_to_completion(to_config(config))));
    });
}

qbot_status qbot_replay_trace(const char *trace_jsonl, const char *map_text, size_t *records) {
    return guarded([&] {
        require(trace_jsonl != nullptr, "null argument");
        auto trace = qbot::parse_trace(trace_jsonl);
        auto controller = qbot::vehicle_controller(/*lowered=*/true);
        std::optional<qbot::MapDocument> doc;
        if (map_text != nullptr) {
            doc = qbot::load_map(map_text);
            if (!trace.empty() && trace.front().pose != doc->start) {
                throw qbot::Error(qbot::ErrorCode::Replay, "step 0: trace does not start at the map's robot marker");
            }
        }
        qbot::replay_trace(trace, controller, doc ? &doc->map : nullptr);
        if (records != nullptr) {
            *records = trace.size();
        }
    });
}

qbot_status qbot_protocol_new(qbot_protocol **out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new qbot_protocol{};
    });
}

qbot_status qbot_protocol_handle(qbot_protocol *protocol, const char *line, char **replies) {
    return guarded([&] {
        require(protocol != nullptr && line != nullptr && replies != nullptr, "null argument");
        std::string out;
        for (const auto &msg : protocol->session.handle(line)) {
            out += msg;
            out += '\n';
        }
        *replies = owned_string(out);
    });
}

void qbot_protocol_free(qbot_protocol *protocol) {
    delete protocol;
}

qbot_status qbot_server_start(int port, qbot_server **out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = new qbot_server{std::make_unique<qbot::Server>(port)};
    });
}

int qbot_server_port(const qbot_server *server) {
    return server ? server->server->port() : -1;
}

qbot_status qbot_server_wait(qbot_server *server) {
    return guarded([&] {
        require(server != nullptr, "server is null");
        server->server->wait();
    });
}

qbot_status qbot_server_stop(qbot_server *server) {
    return guarded([&] {
        require(server != nullptr, "server is null");
        server->server->stop();
    });
}

void qbot_server_free(qbot_server *server) {
    delete server;
}

}  // extern "C"
