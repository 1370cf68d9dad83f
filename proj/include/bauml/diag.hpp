#ifndef BAUML_DIAG_HPP
#define BAUML_DIAG_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace bauml {

struct SourcePos {
    int line = 0;    // 1-based; 0 = unknown
    int column = 0;

    std::string str() const {
        if (line == 0) return "?";
        return std::to_string(line) + ":" + std::to_string(column);
    }
};

// Base for all diagnosable failures. `kind` is a stable machine-readable tag
// (e.g. "SyntaxError", "ValidationError.TwoTerminalStates").
class Error : public std::runtime_error {
public:
    Error(std::string kind, SourcePos pos, const std::string& msg)
        : std::runtime_error(pos.line ? pos.str() + ": " + msg : msg),
          kind_(std::move(kind)), pos_(pos) {}

    Error(std::string kind, const std::string& msg) : Error(std::move(kind), SourcePos{}, msg) {}

    const std::string& kind() const { return kind_; }
    SourcePos pos() const { return pos_; }

private:
    std::string kind_;
    SourcePos pos_;
};

inline Error syntax_error(SourcePos pos, const std::string& msg) {
    return Error("SyntaxError", pos, msg);
}

// Every ValidationError variant the toolkit can raise; validation_error
// rejects tags outside this list so tests can enumerate it.
const std::vector<std::string>& validation_variants();

Error validation_error(const std::string& variant, SourcePos pos, const std::string& msg);

}  // namespace bauml

#endif
