#include "random_program.hpp"

#include <sstream>
#include <vector>

namespace j2aig::testing {

namespace {

class Gen {
public:
    Gen(std::mt19937_64& rng, const RandomProgramOptions& opt) : rng_(rng), opt_(opt) {
        for (int k = 0; k < opt.scalars; ++k) ints_.push_back("x" + std::to_string(k));
        for (int k = 0; k < opt.arrays; ++k) {
            arrays_.push_back("a" + std::to_string(k));
            sizes_.push_back(1 + pick(opt.max_array));
        }
    }

    std::string program() {
        std::ostringstream out;
        for (size_t k = 0; k < ints_.size(); ++k) {
            out << "int " << ints_[k];
            if (chance(0.3)) out << " = " << constant();
            out << ";\n";
        }
        out << "bool b0;\n";
        for (size_t k = 0; k < arrays_.size(); ++k) out << "int [" << sizes_[k] << "] " << arrays_[k] << ";\n";
        std::ostringstream body;
        budget_ = 1 + pick(opt_.max_stmts);
        block(body, 0, false);
        if (body.str().empty()) body << ints_[0] << " = " << ints_[0] << " + 1;\n";
        // Counters are declared last, once their number is known.
        for (int k = 0; k < counters_; ++k) out << "int c" << k << ";\n";
        out << body.str();
        return out.str();
    }

private:
    int pick(int n) { return static_cast<int>(rng_() % static_cast<uint64_t>(n)); }
    bool chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

    int64_t constant() {
        const int64_t lo = -(int64_t{1} << (opt_.width - 1));
        const int64_t hi = (int64_t{1} << (opt_.width - 1)) - 1;
        if (chance(0.6)) return std::uniform_int_distribution<int64_t>(-2, 3)(rng_);
        return std::uniform_int_distribution<int64_t>(lo, hi)(rng_);
    }

    std::string lit(int64_t v) { return v < 0 ? "(" + std::to_string(v) + ")" : std::to_string(v); }

    std::string int_expr(int depth) {
        int r = pick(depth <= 0 ? 3 : 8);
        switch (r) {
        case 0: return lit(constant());
        case 1:
        case 2:
            if (!arrays_.empty() && chance(0.3)) {
                size_t k = static_cast<size_t>(pick(static_cast<int>(arrays_.size())));
                return arrays_[k] + "[" + (depth <= 0 ? std::to_string(pick(sizes_[k])) : int_expr(depth - 1)) + "]";
            }
            return ints_[static_cast<size_t>(pick(static_cast<int>(ints_.size())))];
        case 3: return "-" + int_expr(depth - 1);
        case 4: return "(" + bool_expr(depth - 1) + " ? " + int_expr(depth - 1) + " : " + int_expr(depth - 1) + ")";
        default: {
            static const char* ops[] = {"+", "-", "*", "/", "%"};
            int n = opt_.division ? 5 : 3;
            return "(" + int_expr(depth - 1) + " " + ops[pick(n)] + " " + int_expr(depth - 1) + ")";
        }
        }
    }

    std::string bool_expr(int depth) {
        int r = pick(depth <= 0 ? 2 : 6);
        switch (r) {
        case 0: return chance(0.5) ? "b0" : (chance(0.5) ? "true" : "false");
        case 1:
        case 2: {
            static const char* rel[] = {"<", "<=", ">", ">=", "==", "!="};
            return "(" + int_expr(depth - 1) + " " + rel[pick(6)] + " " + int_expr(depth - 1) + ")";
        }
        case 3: return "!" + bool_expr(depth - 1);
        case 4: return "(" + bool_expr(depth - 1) + " && " + bool_expr(depth - 1) + ")";
        default: return "(" + bool_expr(depth - 1) + " || " + bool_expr(depth - 1) + ")";
        }
    }

    void indent(std::ostringstream& out, int depth) {
        for (int k = 0; k < depth; ++k) out << "  ";
    }

    void block(std::ostringstream& out, int depth, bool in_loop) {
        int n = 1 + pick(3);
        for (int k = 0; k < n && budget_ > 0; ++k) statement(out, depth, in_loop);
    }

    void statement(std::ostringstream& out, int depth, bool in_loop) {
        --budget_;
        int r = pick(depth >= 2 ? 4 : 7);
        indent(out, depth);
        if (r == 0 && in_loop && chance(0.5)) {
            out << "break;\n";
        } else if (r <= 1) {
            if (chance(0.2)) out << "b0 = " << bool_expr(2) << ";\n";
            else out << ints_[static_cast<size_t>(pick(static_cast<int>(ints_.size())))] << " = " << int_expr(2) << ";\n";
        } else if (r <= 3) {
            if (!arrays_.empty()) {
                size_t k = static_cast<size_t>(pick(static_cast<int>(arrays_.size())));
                out << arrays_[k] << "[" << int_expr(1) << "] = " << int_expr(2) << ";\n";
            } else {
                out << ints_[0] << " = " << int_expr(2) << ";\n";
            }
        } else if (r <= 5) {
            out << "if (" << bool_expr(2) << ") {\n";
            block(out, depth + 1, in_loop);
            indent(out, depth);
            out << "} else {\n";
            block(out, depth + 1, in_loop);
            indent(out, depth);
            out << "}\n";
        } else {
            std::string c = "c" + std::to_string(counters_++);
            budget_ -= 2;
            out << c << " = 0;\n";
            indent(out, depth);
            out << "while (" << c << " < " << 1 + pick(3) << " && " << bool_expr(1) << ") {\n";
            block(out, depth + 1, true);
            indent(out, depth + 1);
            out << c << " = " << c << " + 1;\n";
            indent(out, depth);
            out << "}\n";
        }
    }

    std::mt19937_64& rng_;
    RandomProgramOptions opt_;
    std::vector<std::string> ints_;
    std::vector<std::string> arrays_;
    std::vector<int> sizes_;
    int budget_ = 0;
    int counters_ = 0;
};

std::string quant(std::mt19937_64& rng, int depth, const std::string& outer) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };
    std::string k = "k" + std::to_string(depth);
    int lo = pick(3);
    int hi = lo - 1 + pick(4);
    std::string body;
    switch (pick(depth >= 1 ? 4 : 5)) {
    case 0: body = "a[" + k + "] >= x0"; break;
    case 1: body = "a[" + k + "] != x1"; break;
    case 2: body = "a[" + k + "] + " + k + " < x0 + 2"; break;
    case 3: body = outer.empty() ? "x1 <= " + k : "a[" + k + "] <= a[" + outer + "]"; break;
    default: body = quant(rng, depth + 1, k); break;
    }
    return std::string(pick(2) ? "forall" : "exists") + "(int " + k + ")[" + std::to_string(lo) + " .. " +
           std::to_string(hi) + "]{ " + body + " }";
}

} // namespace

std::string random_jcore_source(std::mt19937_64& rng, const RandomProgramOptions& opt) { return Gen(rng, opt).program(); }

std::string random_quantifier_source(std::mt19937_64& rng) {
    auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };
    std::ostringstream out;
    out << "int [3] a;\nint x0;\nint x1;\nint i;\n";
    out << "@pre p { " << quant(rng, 0, "") << (pick(2) ? " || x0 > 1" : "") << " }\n";
    out << "i = 0;\n";
    out << "while (i < 3) {\n";
    switch (pick(3)) {
    case 0: out << "  a[i] = a[i] + x0;\n"; break;
    case 1: out << "  if (a[i] < x1) { a[i] = x1; } else { x0 = x0 - 1; }\n"; break;
    default: out << "  x1 = x1 + a[i];\n"; break;
    }
    out << "  i = i + 1;\n}\n";
    out << "@post p { " << quant(rng, 0, "") << (pick(2) ? " && " : " || ") << quant(rng, 0, "") << " }\n";
    return out.str();
}

Values random_inputs(std::mt19937_64& rng, const Program& p, int width) {
    const int64_t lo = -(int64_t{1} << (width - 1));
    const int64_t hi = (int64_t{1} << (width - 1)) - 1;
    std::uniform_int_distribution<int64_t> dist(lo, hi);
    Values in;
    for (const auto& d : p.decls) {
        std::vector<int64_t> v;
        for (int k = 0; k < d.size(); ++k) v.push_back(d.type == Type::Bool ? static_cast<int64_t>(rng() & 1U) : dist(rng));
        in[d.name] = std::move(v);
    }
    return in;
}

} // namespace j2aig::testing
