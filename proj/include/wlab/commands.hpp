#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wlab/protocols.hpp"
#include "wlab/qcore.hpp"

namespace wlab::cli {

/// Output payload plus process exit code: 0 success, 1 suite failure,
/// 2 usage / domain error (the message is the payload).
struct CommandResult {
  int exit_code = 0;
  std::string output;
};

/// Channel selectors: ghz3, ghz4, f-ghz, w, w-tilde, ghz-class:a,b,
/// w-class:a,b,c[,d], phi-prime:x,sign, w-family:k, file:PATH.
struct ParsedChannel {
  protocols::ChannelSpec spec;
  std::string name;
};
ParsedChannel parse_channel(const std::string& selector);

/// Comma-separated amplitudes, each a real ("0.6") or a complex "re+imj"
/// pair ("0.5-0.5j", "1j").
std::vector<Complex> parse_amplitudes(const std::string& text);
Complex parse_complex(const std::string& text);

struct TeleportOptions {
  std::string channel = "ghz3";
  std::string input = "0.6,0.8";  // family coefficients alpha, beta
  std::string family = "auto";    // auto | epr | ghz | w3 (ghz4 only)
  double theta = 0.0;
  double theta2 = 0.0;  // second basis angle, four-qubit channel only
  std::string search;   // default depends on the channel
  int shots = 0;
  unsigned long long seed = 1;
  std::string format = "json";
  std::optional<double> tol_override;  // testing only
};
CommandResult cmd_teleport(const TeleportOptions& opt);

struct DenseOptions {
  std::string channel = "ghz3";
  std::string message = "000";  // three bits
  std::string format = "json";
};
CommandResult cmd_dense(const DenseOptions& opt);

struct ProbeOptions {
  std::string channel = "w-class:0.33,0.33,0.34";
  std::string formula = "wclass";  // wclass | ghzclass
  std::string input;               // defaults depend on the formula
  double theta = 0.0;
  std::string sweep_theta;  // "start:end:points"
  std::string format = "json";
};
CommandResult cmd_probe(const ProbeOptions& opt);

struct ConvertOptions {
  std::string src = "ghz3";
  std::string dst = "f-ghz";
  int samples = 10000;
  unsigned long long seed = 1;
  std::string format = "json";
};
CommandResult cmd_convert(const ConvertOptions& opt);

struct OpticalOptions {
  std::string g = "1,1,1";
  std::string pump = "1";
  double q = 1.0;
  double t = 0.1;
  std::string format = "json";
};
CommandResult cmd_optical(const OpticalOptions& opt);

struct FindRecoveryOptions {
  std::string channel = "ghz3";
  double theta = 0.0;
  double theta2 = 0.0;
  std::string search = "pauli-phase-local";
  int samples = 10000;
  unsigned long long seed = 1;
  std::string format = "json";
};
CommandResult cmd_find_recovery(const FindRecoveryOptions& opt);

struct VerifyOptions {
  std::string format = "pretty";
};
CommandResult cmd_verify(const VerifyOptions& opt);

/// Writes output to the path (or stdout when empty) and returns the exit code.
int deliver(const CommandResult& result, const std::string& out_path);

}  // namespace wlab::cli
