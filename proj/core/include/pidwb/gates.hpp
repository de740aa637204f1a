#pragma once

#include "pidwb/rational.hpp"
#include "pidwb/system.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pidwb {

// Two uniform bits with p(X1 = X2) = (1 + correlation) / 2 and target Y = (X1, X2) labelled A..D.
SystemSpec tbc(const Rational& correlation);
SystemSpec xor_gate();
SystemSpec and_gate();
SystemSpec copy_single();        // one uniform bit source copied to the target
SystemSpec xor_source_copy();    // X1, X2 uniform, X3 = X1 xor X2, Y = (X1, X2, X3)

// Further fixtures used by the property harness.
SystemSpec rdn_gate();                       // X1 = X2 = Y uniform bit
SystemSpec unq_gate();                       // independent bits, Y = X1
SystemSpec noisy_copy_pair(const Rational& flip);  // X1 = X2 = B, Y = B through a binary symmetric channel
SystemSpec sum_gate();                       // Y = X1 + X2 over uniform bits
SystemSpec three_copy();                     // X1 = X2 = X3 = Y uniform bit
SystemSpec and3_gate();
SystemSpec two_target_copy();                // independent bits, targets Y1 = X1 and Y2 = X2
SystemSpec two_target_xor();                 // independent bits, targets Y1 = X1 and Y2 = X1 xor X2

// Integer weights in [weight_floor, 100] renormalized exactly. Cards lists every source then the
// target. Deterministic under seed.
SystemSpec random_system(int n_sources, const std::vector<int>& cards, std::uint64_t seed, int weight_floor = 1);

struct GateInfo {
  std::string id;
  std::string description;
  std::function<SystemSpec()> make;
};

const std::vector<GateInfo>& gate_catalog();
// Accepts catalog ids plus "tbc:<c>" and "random:<n>:<seed>" (binary variables).
SystemSpec make_gate(const std::string& id);  // throws std::invalid_argument

}  // namespace pidwb
