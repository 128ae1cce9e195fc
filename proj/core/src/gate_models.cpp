#include "pcm/gate_models.hpp"

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstring>
#include <sstream>

#include "pcm/errors.hpp"

namespace pcm {

namespace {

constexpr double kBetaL = 1.3;
constexpr double kBetaT = 0.8;
constexpr double kBetaW = 0.5;
constexpr double kNandShape = 1.12;          // sensitivity scale vs. the inverter
constexpr double kFaWeights[3] = {1.0, 0.9, 0.6};

}  // namespace

std::string gate_kind_name(GateKind k) {
    switch (k) {
        case GateKind::Inverter: return "inverter";
        case GateKind::InverterChain: return "inverter_chain";
        case GateKind::Nand2: return "nand2";
        case GateKind::FullAdder: return "full_adder";
        case GateKind::NandMIS: return "nand_mis";
        case GateKind::External: return "external";
    }
    return "?";
}

GateKind gate_kind_from_name(const std::string& name) {
    if (name == "inverter") return GateKind::Inverter;
    if (name == "inverter_chain") return GateKind::InverterChain;
    if (name == "nand2") return GateKind::Nand2;
    if (name == "full_adder") return GateKind::FullAdder;
    if (name == "nand_mis") return GateKind::NandMIS;
    if (name == "external") return GateKind::External;
    throw ParamDomainError("unknown gate model kind: " + name);
}

std::vector<std::string> model_arguments(const GateModel& model) {
    switch (model.kind) {
        case GateKind::Inverter: return {"L", "Tox", "W"};
        case GateKind::InverterChain: {
            std::vector<std::string> args = {"L", "Tox", "W"};
            for (unsigned i = 1; i <= model.stages; ++i)
                args.push_back("L" + std::to_string(i));
            return args;
        }
        case GateKind::Nand2: return {"L", "Tox"};
        case GateKind::FullAdder: return {"L", "Tox"};
        case GateKind::NandMIS: return {"arrA", "arrB", "L"};
        case GateKind::External: return {};  // free-form, checked against the template
    }
    return {};
}

void validate(const GateModel& model) {
    if (model.kind != GateKind::External && !(model.d0 > 0.0))
        throw ParamDomainError("gate model: d0 must be > 0");
    if (!(model.L0 > 0.0) || !(model.Tox0 > 0.0) || !(model.W0 > 0.0))
        throw ParamDomainError("gate model: nominal L0/Tox0/W0 must be > 0");
    if (model.stages < 1) throw ParamDomainError("gate model: stages must be >= 1");
    if (model.kind == GateKind::External) {
        if (model.command.empty())
            throw ParamDomainError("external gate model: command is empty");
        for (const auto& [name, arg] : model.binding) {
            (void)arg;
            if (model.command.find("{" + name + "}") == std::string::npos)
                throw ParamDomainError("external gate model: command lacks placeholder {" +
                                       name + "}");
        }
        return;
    }
    auto args = model_arguments(model);
    std::map<std::string, int> used;
    for (const auto& [name, arg] : model.binding) {
        if (std::find(args.begin(), args.end(), arg) == args.end())
            throw ParamDomainError("binding '" + name + "' -> '" + arg +
                                   "' not consumed by " + gate_kind_name(model.kind));
        if (++used[arg] > 1)
            throw ParamDomainError("argument '" + arg + "' bound more than once");
    }
    if (model.kind == GateKind::NandMIS) {
        bool a = false, b = false;
        for (const auto& [name, arg] : model.binding) {
            (void)name;
            a |= arg == "arrA";
            b |= arg == "arrB";
        }
        if (!a || !b)
            throw ParamDomainError("nand_mis requires arrA and arrB bindings");
    }
}

namespace {

class ArgView {
public:
    ArgView(const GateModel& model, const std::map<std::string, double>& physical) {
        for (const auto& [name, arg] : model.binding) {
            auto it = physical.find(name);
            if (it == physical.end())
                throw BindingError("missing physical value for bound input '" + name + "'");
            values_[arg] = it->second;
        }
    }

    bool has(const std::string& arg) const { return values_.count(arg) != 0; }

    double require(const std::string& arg) const {
        auto it = values_.find(arg);
        if (it == values_.end())
            throw BindingError("model argument '" + arg + "' is not bound");
        return it->second;
    }

    // Ratio to nominal for a geometry argument; unbound factors are 1.
    double ratio(const std::string& arg, double nominal) const {
        auto it = values_.find(arg);
        if (it == values_.end()) return 1.0;
        if (!(it->second > 0.0))
            throw ParamDomainError("physical value for '" + arg + "' must be > 0");
        return it->second / nominal;
    }

private:
    std::map<std::string, double> values_;
};

double inverter_form(double d0, double rl, double rt, double rw,
                     double shape = 1.0) {
    return d0 * std::pow(rl, kBetaL * shape) * std::pow(rt, kBetaT * shape) *
           std::pow(rw, -kBetaW * shape);
}

}  // namespace

double eval_gate(const GateModel& model, const std::map<std::string, double>& physical) {
    validate(model);
    if (model.kind == GateKind::External)
        return external_eval(model.command, physical, model.timeout);
    ArgView args(model, physical);
    switch (model.kind) {
        case GateKind::Inverter:
            return inverter_form(model.d0, args.ratio("L", model.L0),
                                 args.ratio("Tox", model.Tox0), args.ratio("W", model.W0));
        case GateKind::InverterChain: {
            double rt = args.ratio("Tox", model.Tox0);
            double rw = args.ratio("W", model.W0);
            double stage_d0 = model.d0 / static_cast<double>(model.stages);
            double total = 0.0;
            for (unsigned i = 1; i <= model.stages; ++i) {
                std::string per_stage = "L" + std::to_string(i);
                double rl = args.has(per_stage) ? args.ratio(per_stage, model.L0)
                                                : args.ratio("L", model.L0);
                total += inverter_form(stage_d0, rl, rt, rw);
            }
            return total;
        }
        case GateKind::Nand2:
            return inverter_form(model.d0, args.ratio("L", model.L0),
                                 args.ratio("Tox", model.Tox0), 1.0, kNandShape);
        case GateKind::FullAdder: {
            double stage_d0 = model.d0 / (kFaWeights[0] + kFaWeights[1] + kFaWeights[2]);
            double rl = args.ratio("L", model.L0);
            double rt = args.ratio("Tox", model.Tox0);
            double total = 0.0;
            for (double w : kFaWeights)
                total += w * inverter_form(stage_d0, rl, rt, 1.0, kNandShape);
            return total;
        }
        case GateKind::NandMIS: {
            double arr = std::max(args.require("arrA"), args.require("arrB"));
            return arr + inverter_form(model.d0, args.ratio("L", model.L0), 1.0, 1.0);
        }
        case GateKind::External:
            break;
    }
    throw ParamDomainError("eval_gate: unreachable kind");
}

namespace {

std::string substitute(const std::string& tmpl, const std::map<std::string, double>& vals) {
    std::string out = tmpl;
    for (const auto& [name, value] : vals) {
        std::string key = "{" + name + "}";
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.17g", value);
        std::size_t pos = 0;
        bool found = false;
        while ((pos = out.find(key, pos)) != std::string::npos) {
            out.replace(pos, key.size(), buf);
            pos += std::strlen(buf);
            found = true;
        }
        if (!found)
            throw ExternalModelError("command template lacks placeholder " + key, "");
    }
    return out;
}

}  // namespace

double external_eval(const std::string& command_template,
                     const std::map<std::string, double>& physical,
                     std::chrono::milliseconds timeout) {
    std::string cmd = substitute(command_template, physical);

    int fds[2];
    if (pipe(fds) != 0) throw ExternalModelError("pipe() failed", "");
    pid_t pid = fork();
    if (pid < 0) {
        close(fds[0]);
        close(fds[1]);
        throw ExternalModelError("fork() failed", "");
    }
    if (pid == 0) {
        dup2(fds[1], STDOUT_FILENO);
        close(fds[0]);
        close(fds[1]);
        execl("/bin/sh", "sh", "-c", cmd.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(fds[1]);
    fcntl(fds[0], F_SETFL, O_NONBLOCK);

    std::string output;
    auto deadline = std::chrono::steady_clock::now() + timeout;
    bool timed_out = false;
    for (;;) {
        auto remain = std::chrono::duration_cast<std::chrono::milliseconds>(
            deadline - std::chrono::steady_clock::now());
        if (remain.count() <= 0) {
            timed_out = true;
            break;
        }
        pollfd pfd{fds[0], POLLIN, 0};
        int pr = poll(&pfd, 1, static_cast<int>(remain.count()));
        if (pr < 0) break;
        if (pr == 0) {
            timed_out = true;
            break;
        }
        char buf[4096];
        ssize_t r = read(fds[0], buf, sizeof buf);
        if (r > 0) {
            output.append(buf, static_cast<std::size_t>(r));
        } else if (r == 0) {
            break;  // EOF
        } else {
            break;
        }
    }
    close(fds[0]);
    if (timed_out) {
        kill(pid, SIGKILL);
        waitpid(pid, nullptr, 0);
        throw ExternalModelError("external model timed out: " + cmd, output);
    }
    int status = 0;
    waitpid(pid, &status, 0);
    if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
        throw ExternalModelError("external model exited with nonzero status: " + cmd, output);

    // Final non-empty line must hold exactly one decimal number.
    std::istringstream lines(output);
    std::string line, last;
    while (std::getline(lines, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) last = line;
    }
    if (last.empty())
        throw ExternalModelError("external model produced no output: " + cmd, output);
    std::istringstream tok(last);
    double value = 0.0;
    std::string trailing;
    if (!(tok >> value) || (tok >> trailing))
        throw ExternalModelError("external model output is not a single number: '" + last + "'",
                                 output);
    return value;
}

}  // namespace pcm
