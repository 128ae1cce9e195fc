#pragma once

#include <chrono>
#include <map>
#include <string>
#include <vector>

namespace pcm {

enum class GateKind { Inverter, InverterChain, Nand2, FullAdder, NandMIS, External };

std::string gate_kind_name(GateKind k);
GateKind gate_kind_from_name(const std::string& name);

// Black-box scalar delay model. Built-in kinds are analytic surrogates;
// External shells out to a user command.
struct GateModel {
    GateKind kind = GateKind::Inverter;
    double d0 = 0.0;       // calibration delay at all-nominal inputs, ps
    double L0 = 0.18;      // nominal channel length, um
    double Tox0 = 4.1;     // nominal oxide thickness, nm
    double W0 = 0.54;      // nominal width, um
    unsigned stages = 1;   // InverterChain
    std::string command;   // External: template with {name} placeholders
    std::chrono::milliseconds timeout{5000};
    // InputSpec name -> model argument ("L", "Tox", "W", "arrA", "arrB",
    // per-stage "L1".."Ls").
    std::map<std::string, std::string> binding;
};

void validate(const GateModel& model);

// Arguments the kind's formula consumes.
std::vector<std::string> model_arguments(const GateModel& model);

// Evaluates the delay for physical values keyed by InputSpec name.
// Unbound factors sit at their nominal value.
double eval_gate(const GateModel& model, const std::map<std::string, double>& physical);

// Substitutes {name} placeholders, runs the command through /bin/sh, and
// parses a single decimal number from the final non-empty output line.
double external_eval(const std::string& command_template,
                     const std::map<std::string, double>& physical,
                     std::chrono::milliseconds timeout);

}  // namespace pcm
