#pragma once

#include <string>
#include <vector>

namespace rzeta {

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Outcome of one CLI invocation. exit_code is 0 exactly when every check
/// passed; usage and input failures surface as failing pseudo-checks so the
/// invariant holds for them too.
struct RunReport {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs; // (path, digest)
    std::vector<CheckResult> checks;
    int exit_code = 0;

    void add(const std::string& name, bool pass, const std::string& detail);
    bool all_pass() const;

    /// Schema: { "command", "checks": [{"name","pass","detail"}], "exit_code" }.
    /// Deterministic: identical inputs yield byte-identical text.
    std::string to_json_text() const;

    /// Human-readable text block, one line per check plus input digests.
    std::string to_text() const;
};

/// FNV-1a digest of a file's bytes, as fixed-width hex. Throws InputError
/// when the file cannot be read.
std::string file_digest(const std::string& path);

} // namespace rzeta
