#include "j2aig/aiger.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "j2aig/errors.hpp"

namespace j2aig {

namespace {

constexpr const char* kInitTag = "j2aig init";

std::vector<std::string> split(const std::string& line) {
    std::istringstream in(line);
    std::vector<std::string> out;
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

uint64_t number(const std::string& tok, int line) {
    if (tok.empty() || tok.size() > 18) throw FormatError(line, "bad number '" + tok + "'");
    for (char ch : tok)
        if (ch < '0' || ch > '9') throw FormatError(line, "bad number '" + tok + "'");
    return std::stoull(tok);
}

class Reader {
public:
    explicit Reader(const std::string& text) {
        std::istringstream in(text);
        std::string l;
        while (std::getline(in, l)) {
            if (!l.empty() && l.back() == '\r') l.pop_back();
            lines_.push_back(l);
        }
    }

    AigerStats header() {
        if (lines_.empty()) throw FormatError(1, "empty file");
        auto t = split(lines_[0]);
        if (t.size() < 6 || t[0] != "aag") throw FormatError(1, "expected header 'aag M I L O A'");
        for (size_t k = 6; k < t.size(); ++k)
            if (number(t[k], 1) != 0) throw FormatError(1, "bad, constraint, justice and fairness sections are unsupported");
        AigerStats s{number(t[1], 1), number(t[2], 1), number(t[3], 1), number(t[4], 1), number(t[5], 1)};
        if (s.inputs + s.latches + s.ands > s.max_var) throw FormatError(1, "M is smaller than I + L + A");
        return s;
    }

    Aig read() {
        AigerStats s = header();
        size_t pos = 1;
        auto next_line = [&](size_t want, const char* what) {
            if (pos >= lines_.size()) throw FormatError(static_cast<int>(pos + 1), std::string("missing ") + what + " line");
            auto t = split(lines_[pos]);
            ++pos;
            if (t.size() < want) throw FormatError(static_cast<int>(pos), std::string("malformed ") + what + " line");
            return t;
        };
        const int64_t maxlit = 2 * static_cast<int64_t>(s.max_var) + 1;
        auto lit = [&](const std::string& tok) {
            uint64_t v = number(tok, static_cast<int>(pos));
            if (static_cast<int64_t>(v) > maxlit) throw FormatError(static_cast<int>(pos), "literal " + tok + " exceeds M");
            return static_cast<uint32_t>(v);
        };
        std::vector<int> def_line(s.max_var + 1, 0);
        auto define = [&](uint32_t l) {
            if (l < 2 || (l & 1U)) throw FormatError(static_cast<int>(pos), "defined literal must be positive and even");
            if (def_line[l >> 1]) throw FormatError(static_cast<int>(pos), "variable " + std::to_string(l >> 1) + " defined twice");
            def_line[l >> 1] = static_cast<int>(pos);
        };

        std::vector<uint32_t> in_lits;
        for (size_t k = 0; k < s.inputs; ++k) {
            auto t = next_line(1, "input");
            if (t.size() != 1) throw FormatError(static_cast<int>(pos), "malformed input line");
            in_lits.push_back(lit(t[0]));
            define(in_lits.back());
        }
        struct LatchLine {
            uint32_t lit, next, init;
            int line;
        };
        std::vector<LatchLine> latch_lines;
        for (size_t k = 0; k < s.latches; ++k) {
            auto t = next_line(2, "latch");
            if (t.size() > 3) throw FormatError(static_cast<int>(pos), "malformed latch line");
            LatchLine ll{lit(t[0]), lit(t[1]), 0, static_cast<int>(pos)};
            define(ll.lit);
            if (t.size() == 3) {
                ll.init = lit(t[2]);
                if (ll.init > 1 && ll.init != ll.lit)
                    throw FormatError(static_cast<int>(pos), "latch reset must be 0, 1 or the latch literal");
            }
            latch_lines.push_back(ll);
        }
        std::vector<uint32_t> out_lits;
        for (size_t k = 0; k < s.outputs; ++k) {
            auto t = next_line(1, "output");
            if (t.size() != 1) throw FormatError(static_cast<int>(pos), "malformed output line");
            out_lits.push_back(lit(t[0]));
        }
        std::map<uint32_t, std::pair<uint32_t, uint32_t>> ands;
        for (size_t k = 0; k < s.ands; ++k) {
            auto t = next_line(3, "and");
            if (t.size() != 3) throw FormatError(static_cast<int>(pos), "malformed and line");
            uint32_t lhs = lit(t[0]);
            define(lhs);
            ands[lhs >> 1] = {lit(t[1]), lit(t[2])};
        }

        std::map<size_t, std::string> in_names, latch_names, out_names;
        std::map<size_t, std::pair<uint32_t, int>> init_notes;
        for (; pos < lines_.size(); ++pos) {
            const std::string& l = lines_[pos];
            const int ln = static_cast<int>(pos + 1);
            if (l == "c") {
                for (size_t c = pos + 1; c < lines_.size(); ++c) {
                    auto t = split(lines_[c]);
                    if (lines_[c].rfind(kInitTag, 0) != 0) continue;
                    if (t.size() != 4) throw FormatError(static_cast<int>(c + 1), "malformed init annotation");
                    size_t idx = number(t[2], static_cast<int>(c + 1));
                    uint64_t v = number(t[3], static_cast<int>(c + 1));
                    if (idx >= s.latches || static_cast<int64_t>(v) > maxlit)
                        throw FormatError(static_cast<int>(c + 1), "init annotation out of range");
                    init_notes[idx] = {static_cast<uint32_t>(v), static_cast<int>(c + 1)};
                }
                break;
            }
            if (l.empty()) continue;
            size_t sp = l.find(' ');
            if (sp == std::string::npos || sp < 2) throw FormatError(ln, "malformed symbol line");
            char kind = l[0];
            size_t idx = number(l.substr(1, sp - 1), ln);
            std::string name = l.substr(sp + 1);
            if (kind == 'i' && idx < s.inputs) in_names[idx] = name;
            else if (kind == 'l' && idx < s.latches) latch_names[idx] = name;
            else if (kind == 'o' && idx < s.outputs) out_names[idx] = name;
            else if (kind == 'b' || kind == 'c' || kind == 'j' || kind == 'f') throw FormatError(ln, "unsupported symbol kind");
            else throw FormatError(ln, "symbol index out of range");
        }

        Aig g;
        std::vector<Lit> map(s.max_var + 1, kFalse);
        std::vector<char> done(s.max_var + 1, 0);
        done[0] = 1;
        for (size_t k = 0; k < in_lits.size(); ++k) {
            map[in_lits[k] >> 1] = g.add_input(in_names.count(k) ? in_names[k] : std::string{});
            done[in_lits[k] >> 1] = 1;
        }
        for (size_t k = 0; k < latch_lines.size(); ++k) {
            map[latch_lines[k].lit >> 1] = g.add_latch(latch_names.count(k) ? latch_names[k] : std::string{});
            done[latch_lines[k].lit >> 1] = 1;
        }
        auto m = [&](uint32_t l) { return map[l >> 1] ^ (l & 1U); };
        // AND lines may appear in any order; build them fanins first.
        std::vector<char> on_stack(s.max_var + 1, 0);
        auto build = [&](uint32_t var) {
            std::vector<uint32_t> stack{var};
            while (!stack.empty()) {
                uint32_t v = stack.back();
                if (done[v]) {
                    stack.pop_back();
                    continue;
                }
                auto it = ands.find(v);
                if (it == ands.end()) throw FormatError(0, "variable " + std::to_string(v) + " is used but never defined");
                on_stack[v] = 1;
                bool ready = true;
                for (uint32_t f : {it->second.first, it->second.second}) {
                    uint32_t fv = f >> 1;
                    if (done[fv]) continue;
                    if (on_stack[fv]) throw FormatError(def_line[v], "combinational cycle through variable " + std::to_string(fv));
                    stack.push_back(fv);
                    ready = false;
                }
                if (!ready) continue;
                map[v] = g.and_raw(m(it->second.first), m(it->second.second));
                done[v] = 1;
                on_stack[v] = 0;
                stack.pop_back();
            }
        };
        for (const auto& [v, fanins] : ands) build(v);
        auto checked = [&](uint32_t l, int line) {
            if (!done[l >> 1]) throw FormatError(line, "literal " + std::to_string(l) + " is undefined");
            return m(l);
        };
        std::vector<std::pair<size_t, std::string>> init_inputs;
        for (size_t k = 0; k < latch_lines.size(); ++k) {
            const auto& ll = latch_lines[k];
            Lit latch = map[ll.lit >> 1];
            g.set_next(latch, checked(ll.next, ll.line));
            if (ll.init == ll.lit) {
                auto note = init_notes.find(k);
                if (note != init_notes.end()) {
                    g.set_init(latch, checked(note->second.first, note->second.second));
                } else {
                    std::string base = latch_names.count(k) ? latch_names[k] : "l" + std::to_string(k);
                    g.set_init(latch, g.add_input(base + "::init"));
                }
            } else {
                g.set_init(latch, ll.init == 1 ? kTrue : kFalse);
            }
        }
        for (size_t k = 0; k < out_lits.size(); ++k)
            g.add_output(out_names.count(k) ? out_names[k] : std::string{}, checked(out_lits[k], static_cast<int>(1 + s.inputs + s.latches + k + 1)));
        try {
            g.check();
        } catch (const FormatError&) {
            throw;
        } catch (const Error& e) {
            throw FormatError(0, e.what());
        }
        return g;
    }

private:
    std::vector<std::string> lines_;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

std::string write_aiger(const Aig& g) {
    std::vector<uint32_t> var(g.num_nodes(), 0);
    uint32_t next = 1;
    for (uint32_t id : g.inputs()) var[id] = next++;
    for (uint32_t id : g.latches()) var[id] = next++;
    std::vector<uint32_t> ands;
    for (uint32_t i = 1; i < g.num_nodes(); ++i)
        if (g.node(i).kind == NodeKind::And) {
            var[i] = next++;
            ands.push_back(i);
        }
    auto L = [&](Lit l) { return 2 * var[lit_node(l)] + (lit_compl(l) ? 1U : 0U); };

    std::ostringstream out;
    out << "aag " << next - 1 << ' ' << g.inputs().size() << ' ' << g.latches().size() << ' ' << g.outputs().size() << ' '
        << ands.size() << '\n';
    for (uint32_t id : g.inputs()) out << 2 * var[id] << '\n';
    std::vector<std::string> notes;
    for (size_t k = 0; k < g.latches().size(); ++k) {
        const uint32_t id = g.latches()[k];
        const AigNode& n = g.node(id);
        out << 2 * var[id] << ' ' << L(n.a);
        if (n.b == kTrue) {
            out << " 1";
        } else if (n.b != kFalse) {
            out << ' ' << 2 * var[id];
            notes.push_back(std::string(kInitTag) + " " + std::to_string(k) + " " + std::to_string(L(n.b)));
        }
        out << '\n';
    }
    for (const auto& o : g.outputs()) out << L(o.second) << '\n';
    for (uint32_t id : ands) {
        uint32_t a = L(g.node(id).a);
        uint32_t b = L(g.node(id).b);
        if (a < b) std::swap(a, b);
        out << 2 * var[id] << ' ' << a << ' ' << b << '\n';
    }
    for (size_t k = 0; k < g.inputs().size(); ++k)
        if (!g.node(g.inputs()[k]).name.empty()) out << 'i' << k << ' ' << g.node(g.inputs()[k]).name << '\n';
    for (size_t k = 0; k < g.latches().size(); ++k)
        if (!g.node(g.latches()[k]).name.empty()) out << 'l' << k << ' ' << g.node(g.latches()[k]).name << '\n';
    for (size_t k = 0; k < g.outputs().size(); ++k)
        if (!g.outputs()[k].first.empty()) out << 'o' << k << ' ' << g.outputs()[k].first << '\n';
    if (!notes.empty()) {
        out << "c\n";
        for (const auto& n : notes) out << n << '\n';
    }
    return out.str();
}

void write_aiger_file(const Aig& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << write_aiger(g);
    if (!out) throw IoError("error writing " + path);
}

Aig read_aiger(const std::string& text) { return Reader(text).read(); }

Aig read_aiger_file(const std::string& path) { return read_aiger(slurp(path)); }

AigerStats aiger_header(const std::string& text) { return Reader(text).header(); }

} // namespace j2aig
