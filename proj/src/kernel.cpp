#include "resonance/kernel.hpp"

namespace resonance {

const char* to_string(KernelKind k) { return k == KernelKind::Cosine ? "cos" : "sin"; }

}  // namespace resonance
