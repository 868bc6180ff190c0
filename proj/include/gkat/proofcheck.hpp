#ifndef GKAT_PROOFCHECK_HPP
#define GKAT_PROOFCHECK_HPP

#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "gkat/syntax.hpp"

namespace gkat {

/// The five supported axiom systems. The two skip-free systems differ only
/// in admitting x0 = 0; likewise the two full-GKAT systems.
enum class ProofSystem {
    SkipfreeBisim,
    SkipfreeLang,
    Star,
    GkatBisim,
    GkatLang,
};

const char* proof_system_name(ProofSystem s);
ProofSystem proof_system_from_name(const std::string& name);

/// One rewrite: instantiate an axiom via `subst`, match one side against the
/// subterm at `position` (child indices from the root), replace it with the
/// other side. RSP steps carry a premise derivation.
struct ProofStep {
    std::string axiom;
    std::vector<std::size_t> position;
    bool left_to_right = true;
    std::map<std::string, std::string> subst;  // variable -> source text
    std::vector<ProofStep> premise;            // RSP only
};

struct ProofScript {
    ProofSystem system = ProofSystem::SkipfreeBisim;
    Context ctx;
    std::string lhs, rhs;
    std::vector<ProofStep> steps;
};

struct CheckResult {
    bool ok = true;
    /// Index of the first failing step; steps.size() marks a failure at the
    /// final comparison or the semantic audit.
    std::size_t failed_step = 0;
    std::string message;
};

/// Checks every step, compares the final term against rhs, then audits the
/// goal semantically (bisimilarity or language equivalence as the system
/// dictates). An accepted script is a verified derivation.
CheckResult check_script(const ProofScript& p);

/// The empty-word test of a full GKAT expression: where the program can
/// terminate without performing an action.
BExpP guardedness_E(const GkatExpP& e);

ProofScript script_from_json(const nlohmann::json& j);
nlohmann::json script_to_json(const ProofScript& p);

}  // namespace gkat

#endif
