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

// qbot command line. Talks to libqbot only through its C interface.
//
// Exit codes: 0 success, 1 verification or validation failure, 2 bad input.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qbot/qbot.h"

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_FAILED = 1;
constexpr int EXIT_INPUT = 2;
constexpr int DEFAULT_PORT = 7878;

/// Thrown to unwind out of a subcommand with a specific exit code.
struct Exit {
    int code;
};

struct CircuitDeleter {
    void operator()(qbot_circuit *c) const {
        qbot_circuit_free(c);
    }
};
using CircuitPtr = std::unique_ptr<qbot_circuit, CircuitDeleter>;

struct StringDeleter {
    void operator()(char *s) const {
        qbot_string_free(s);
    }
};

std::string take(char *s) {
    std::unique_ptr<char, StringDeleter> owned(s);
    return owned ? std::string(owned.get()) : std::string();
}

int exit_code_for(qbot_status status) {
    switch (status) {
        case QBOT_OK:
            return EXIT_OK;
        case QBOT_ERR_REPLAY:
        case QBOT_ERR_CORRUPT_CONTROLLER:
            return EXIT_FAILED;
        default:
            return EXIT_INPUT;
    }
}

void check(qbot_status status, const std::string &context) {
    if (status != QBOT_OK) {
        std::cerr << "qbot: " << context << ": " << qbot_last_error() << " [" << qbot_status_name(status) << "]\n";
        throw Exit{exit_code_for(status)};
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::cerr << "qbot: cannot read " << path << "\n";
        throw Exit{EXIT_INPUT};
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (!out) {
        std::cerr << "qbot: cannot write " << path << "\n";
        throw Exit{EXIT_INPUT};
    }
}

CircuitPtr load_controller(bool lowered, int omit_segment, const std::string &table_path) {
    qbot_circuit *raw = nullptr;
    if (!table_path.empty()) {
        check(qbot_controller_from_table(read_file(table_path).c_str(), lowered, &raw), table_path);
        if (omit_segment >= 0) {
            std::cerr << "qbot: --omit-segment cannot be combined with --table\n";
            throw Exit{EXIT_INPUT};
        }
    } else {
        check(qbot_controller_circuit(lowered, omit_segment, &raw), "building the controller");
    }
    return CircuitPtr(raw);
}

struct VerifyArgs {
    std::string format = "text";
    int omit_segment = -1;
    std::string table;
    bool logical = false;
};

int cmd_verify(const VerifyArgs &args) {
    auto controller = load_controller(!args.logical, args.omit_segment, args.table);
    qbot_verify_row rows[16];
    int passed = 0;
    check(qbot_verify_controller(controller.get(), rows, &passed), "verify");

    if (args.format == "json") {
        nlohmann::ordered_json out = nlohmann::ordered_json::array();
        for (const auto &r : rows) {
            out.push_back({{"input", r.sensors}, {"expected", r.expected}, {"computed", r.computed}, {"pass", r.pass != 0}});
        }
        std::cout << out.dump() << "\n";
    } else {
        std::cout << "input    expected  computed  result\n";
        for (const auto &r : rows) {
            std::cout << "|" << r.sensors << ">   " << r.expected << "    " << r.computed << "    "
                      << (r.pass ? "PASS" : "FAIL") << "\n";
        }
        std::cout << passed << "/16 rows match\n";
    }
    return passed == 16 ? EXIT_OK : EXIT_FAILED;
}

struct DecomposeArgs {
    std::optional<int> controls;
    std::string emit;
    bool verify = false;
    std::string format = "text";
};

int cmd_decompose(const DecomposeArgs &args) {
    if (!args.verify && !args.controls) {
        std::cerr << "qbot: decompose needs --controls (or --verify)\n";
        return EXIT_INPUT;
    }
    int code = EXIT_OK;
    if (args.controls && (!args.emit.empty() || !args.verify)) {
        qbot_circuit *raw = nullptr;
        check(qbot_mcx_plan(*args.controls, &raw), "decompose");
        CircuitPtr plan(raw);
        char *qasm = nullptr;
        check(qbot_circuit_to_qasm(plan.get(), &qasm), "decompose");
        if (args.emit.empty()) {
            std::cout << take(qasm);
        } else {
            write_file(args.emit, take(qasm));
        }
    }
    if (args.verify) {
        int lo = args.controls.value_or(0);
        int hi = args.controls.value_or(6);
        nlohmann::ordered_json json_rows = nlohmann::ordered_json::array();
        if (args.format != "json") {
            std::cout << "k  ancillas  ccx  cx  cases  matches  result\n";
        }
        for (int k = lo; k <= hi; k++) {
            qbot_mcx_report report{};
            check(qbot_verify_mcx(k, &report), "verify k=" + std::to_string(k));
            if (!report.passed) {
                code = EXIT_FAILED;
            }
            if (args.format == "json") {
                json_rows.push_back({{"k", report.k},
                                     {"ancillas", report.ancillas},
                                     {"ccx", report.ccx},
                                     {"cx", report.cx},
                                     {"cases", report.cases},
                                     {"matches", report.matches},
                                     {"pass", report.passed != 0},
                                     {"counterexample", report.counterexample}});
            } else {
                std::printf(
                    "%-2d %-9d %-4d %-3d %-6d %-8d %s\n", report.k, report.ancillas, report.ccx, report.cx,
                    report.cases, report.matches, report.passed ? "PASS" : "FAIL");
                if (!report.passed) {
                    std::printf("   counterexample: %s\n", report.counterexample);
                }
            }
        }
        if (args.format == "json") {
            std::cout << json_rows.dump() << "\n";
        }
    }
    return code;
}

struct SimArgs {
    std::string circuit;
    std::string input;
    std::string sensors;
    std::string registers;
    std::optional<uint64_t> seed;
    std::string format = "text";
};

int cmd_sim(const SimArgs &args) {
    qbot_circuit *raw = nullptr;
    check(qbot_circuit_parse_qasm(read_file(args.circuit).c_str(), &raw), args.circuit);
    CircuitPtr circuit(raw);
    if (!args.registers.empty()) {
        check(qbot_circuit_set_registers_json(circuit.get(), read_file(args.registers).c_str()), args.registers);
    }
    qbot_circuit_info info{};
    check(qbot_circuit_info_get(circuit.get(), &info), "sim");

    std::string input = args.input;
    if (!args.sensors.empty()) {
        if (!input.empty()) {
            std::cerr << "qbot: give either an input bitstring or --sensors, not both\n";
            return EXIT_INPUT;
        }
        if (args.registers.empty()) {
            std::cerr << "qbot: --sensors needs --registers to place the sensor bits\n";
            return EXIT_INPUT;
        }
        auto regs = nlohmann::json::parse(read_file(args.registers));
        if (args.sensors.size() != 4 || args.sensors.find_first_not_of("01") != std::string::npos) {
            std::cerr << "qbot: --sensors must be 4 bits S1S2S3S4\n";
            return EXIT_INPUT;
        }
        input.assign(info.num_qubits, '0');
        for (size_t i = 0; i < 4; i++) {
            input[regs["sensors"][i].get<size_t>()] = args.sensors[i];
        }
    }
    if (input.empty()) {
        std::cerr << "qbot: sim needs an input bitstring or --sensors\n";
        return EXIT_INPUT;
    }

    char *out = nullptr;
    if (args.seed) {
        check(qbot_circuit_run_statevector(circuit.get(), input.c_str(), *args.seed, &out), "sim");
    } else {
        check(qbot_circuit_run_basis(circuit.get(), input.c_str(), &out), "sim");
    }
    std::string output = take(out);
    std::optional<std::string> actuators;
    if (info.has_registers) {
        char act[7];
        check(qbot_circuit_actuator_string(circuit.get(), output.c_str(), act), "sim");
        actuators = act;
    }

    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["input"] = input;
        j["output"] = output;
        j["actuators"] = actuators ? nlohmann::ordered_json(*actuators) : nlohmann::ordered_json(nullptr);
        std::cout << j.dump() << "\n";
    } else {
        std::cout << output << "\n";
        if (actuators) {
            std::cout << "actuators " << *actuators << "\n";
        }
    }
    return EXIT_OK;
}

struct RunArgs {
    std::string map;
    std::string policy = "first-clear";
    int max_steps = 1000;
    std::string trace;
    uint64_t seed = 0;
    bool render = false;
    std::string format = "text";
};

int cmd_run(const RunArgs &args) {
    std::string map_text = read_file(args.map);
    std::string policy = args.policy;
    if (policy == "interactive") {
        std::cerr << "qbot: run is headless; use first-clear or script:DIRS (interactive play goes through serve)\n";
        return EXIT_INPUT;
    }
    qbot_episode_config config{map_text.c_str(), args.max_steps, policy.c_str(), args.seed};
    std::string jsonl;
    if (args.render) {
        qbot_episode *ep = nullptr;
        check(qbot_episode_start(&config, &ep), "run");
        std::unique_ptr<qbot_episode, void (*)(qbot_episode *)> owned(ep, qbot_episode_free);
        while (true) {
            char *status = nullptr;
            check(qbot_episode_status(ep, &status), "run");
            if (take(status) == "terminated") {
                break;
            }
            char *msg = nullptr;
            check(qbot_episode_step(ep, &msg), "run");
            take(msg);
            char *picture = nullptr;
            check(qbot_episode_render(ep, &picture), "run");
            std::cerr << take(picture) << "\n";
        }
        char *trace = nullptr;
        check(qbot_episode_trace_jsonl(ep, &trace), "run");
        jsonl = take(trace);
    } else {
        char *trace = nullptr;
        check(qbot_run_episode(&config, &trace), "run");
        jsonl = take(trace);
    }

    size_t records = 0;
    std::string terminal = "none";
    std::istringstream lines(jsonl);
    for (std::string line; std::getline(lines, line);) {
        records++;
        auto j = nlohmann::json::parse(line);
        if (!j["terminal"].is_null()) {
            terminal = j["terminal"].get<std::string>();
        }
    }

    if (args.trace.empty()) {
        std::cout << jsonl;
        return EXIT_OK;
    }
    write_file(args.trace, jsonl);
    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["records"] = records;
        j["terminal"] = terminal;
        j["trace"] = args.trace;
        std::cout << j.dump() << "\n";
    } else {
        std::cout << records << " records, terminal " << terminal << ", trace written to " << args.trace << "\n";
    }
    return EXIT_OK;
}

struct ReplayArgs {
    std::string trace;
    std::string map;
    std::string format = "text";
};

int cmd_replay(const ReplayArgs &args) {
    std::string jsonl = read_file(args.trace);
    std::string map_text = args.map.empty() ? std::string() : read_file(args.map);
    size_t records = 0;
    qbot_status status = qbot_replay_trace(jsonl.c_str(), args.map.empty() ? nullptr : map_text.c_str(), &records);
    bool ok = status == QBOT_OK;
    if (args.format == "json") {
        nlohmann::ordered_json j;
        j["valid"] = ok;
        j["records"] = records;
        j["error"] = ok ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(qbot_last_error());
        std::cout << j.dump() << "\n";
        return exit_code_for(status);
    }
    check(status, args.trace);
    std::cout << records << " records replay cleanly\n";
    return EXIT_OK;
}

struct ServeArgs {
    std::optional<int> port;
};

int cmd_serve(const ServeArgs &args) {
    int port = DEFAULT_PORT;
    if (args.port) {
        port = *args.port;
    } else if (const char *env = std::getenv("QBOT_PORT"); env != nullptr && *env != '\0') {
        char *end = nullptr;
        long value = std::strtol(env, &end, 10);
        if (*end != '\0' || value < 0 || value > 65535) {
            std::cerr << "qbot: QBOT_PORT is not a valid port: " << env << "\n";
            return EXIT_INPUT;
        }
        port = static_cast<int>(value);
    }
    qbot_server *server = nullptr;
    check(qbot_server_start(port, &server), "serve");
    std::cerr << "qbot: listening on 127.0.0.1:" << qbot_server_port(server) << "\n";
    qbot_server_wait(server);
    qbot_server_free(server);
    return EXIT_OK;
}

struct ExportArgs {
    std::string out;
    std::string registers;
    std::string table;
    int omit_segment = -1;
};

int cmd_export(const ExportArgs &args) {
    auto controller = load_controller(/*lowered=*/true, args.omit_segment, args.table);
    char *qasm = nullptr;
    check(qbot_circuit_to_qasm(controller.get(), &qasm), "export");
    std::string text = take(qasm);
    if (args.out.empty()) {
        std::cout << text;
    } else {
        write_file(args.out, text);
    }
    if (!args.registers.empty()) {
        char *regs = nullptr;
        check(qbot_circuit_registers_json(controller.get(), &regs), "export");
        write_file(args.registers, take(regs));
    }
    return EXIT_OK;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qbot: circuit-controlled grid robot"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qbot_version()));

    const std::vector<std::string> formats = {"text", "json"};

    VerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("verify", "Check the lowered controller against the expected truth table");
    verify_cmd->add_option("--format", verify.format, "Output format")->check(CLI::IsMember(formats));
    verify_cmd->add_option("--omit-segment", verify.omit_segment, "Drop one segment (fault injection)")
        ->check(CLI::Range(0, 15));
    verify_cmd->add_option("--table", verify.table, "Synthesize from this truth table file instead")
        ->check(CLI::ExistingFile);
    verify_cmd->add_flag("--logical", verify.logical, "Check the unlowered circuit");

    DecomposeArgs decompose;
    auto *decompose_cmd = app.add_subcommand("decompose", "Lower a multi-controlled NOT to CCX/CX gates");
    decompose_cmd->add_option("--controls", decompose.controls, "Number of controls k")->check(CLI::Range(0, 16));
    decompose_cmd->add_option("--emit", decompose.emit, "Write the lowered plan as QASM to this file");
    decompose_cmd->add_flag("--verify", decompose.verify, "Exhaustively check the plan (k <= 6)");
    decompose_cmd->add_option("--format", decompose.format, "Output format")->check(CLI::IsMember(formats));

    SimArgs sim;
    auto *sim_cmd = app.add_subcommand("sim", "Run a QASM circuit on a basis input");
    sim_cmd->add_option("circuit", sim.circuit, "QASM circuit file")->required()->check(CLI::ExistingFile);
    sim_cmd->add_option("input", sim.input, "Input bits, qubit 0 first");
    sim_cmd->add_option("--sensors", sim.sensors, "Sensor word S1S2S3S4 (needs --registers)");
    sim_cmd->add_option("--registers", sim.registers, "Register map sidecar (JSON)")->check(CLI::ExistingFile);
    sim_cmd->add_option("--seed", sim.seed, "Execute on the state vector and measure with this seed");
    sim_cmd->add_option("--format", sim.format, "Output format")->check(CLI::IsMember(formats));

    RunArgs run;
    auto *run_cmd = app.add_subcommand("run", "Run a headless episode");
    run_cmd->add_option("--map", run.map, "Map file")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--policy", run.policy, "first-clear or script:DIRS");
    run_cmd->add_option("--max-steps", run.max_steps, "Step limit")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--trace", run.trace, "Write the JSONL trace here (default: stdout)");
    run_cmd->add_option("--seed", run.seed, "Measurement seed");
    run_cmd->add_flag("--render", run.render, "Draw the map after every step on stderr");
    run_cmd->add_option("--format", run.format, "Summary format")->check(CLI::IsMember(formats));

    ReplayArgs replay;
    auto *replay_cmd = app.add_subcommand("replay", "Validate a JSONL trace against the controller");
    replay_cmd->add_option("--trace", replay.trace, "Trace file")->required()->check(CLI::ExistingFile);
    replay_cmd->add_option("--map", replay.map, "Map the trace was recorded on")->check(CLI::ExistingFile);
    replay_cmd->add_option("--format", replay.format, "Output format")->check(CLI::IsMember(formats));

    ServeArgs serve;
    auto *serve_cmd = app.add_subcommand("serve", "Serve live episodes over newline-delimited JSON on 127.0.0.1");
    serve_cmd->add_option("--port", serve.port, "TCP port (default: $QBOT_PORT, then 7878)")
        ->check(CLI::Range(0, 65535));

    ExportArgs exp;
    auto *export_cmd = app.add_subcommand("export", "Write the lowered controller as QASM");
    export_cmd->add_option("--out", exp.out, "QASM output file (default: stdout)");
    export_cmd->add_option("--registers", exp.registers, "Also write the register map sidecar here");
    export_cmd->add_option("--table", exp.table, "Synthesize from this truth table file")->check(CLI::ExistingFile);
    export_cmd->add_option("--omit-segment", exp.omit_segment, "Drop one segment")->check(CLI::Range(0, 15));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return EXIT_INPUT;
    }

    try {
        if (*verify_cmd) {
            return cmd_verify(verify);
        }
        if (*decompose_cmd) {
            return cmd_decompose(decompose);
        }
        if (*sim_cmd) {
            return cmd_sim(sim);
        }
        if (*run_cmd) {
            return cmd_run(run);
        }
        if (*replay_cmd) {
            return cmd_replay(replay);
        }
        if (*serve_cmd) {
            return cmd_serve(serve);
        }
        if (*export_cmd) {
            return cmd_export(exp);
        }
    } catch (const Exit &e) {
        return e.code;
    } catch (const nlohmann::json::exception &e) {
        std::cerr << "qbot: " << e.what() << "\n";
        return EXIT_INPUT;
    }
    return EXIT_INPUT;
}
