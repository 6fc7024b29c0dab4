#include "j2aig/trace.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include "j2aig/arith.hpp"
#include "j2aig/errors.hpp"
#include "j2aig/oneloop.hpp"

namespace j2aig {

namespace {

const CircuitVar& need(const Circuit& c, const std::string& name) {
    const CircuitVar* v = c.find_var(name);
    if (!v) throw MissingSymbol("circuit has no variable '" + name + "'");
    return *v;
}

std::string strip_nondet(const std::string& name) {
    const std::string suffix = "::nondet";
    if (name.size() > suffix.size() && name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return name;
}

bool output_at(const Circuit& c, const SimTrace& tr, int step, const char* name) {
    int k = c.aig.find_output(name);
    return k >= 0 && tr.value(step, c.aig.outputs()[static_cast<size_t>(k)].second);
}

// VCD identifiers: printable ASCII '!'..'~', then two characters.
std::string vcd_id(size_t k) {
    std::string id;
    do {
        id.push_back(static_cast<char>('!' + k % 94));
        k /= 94;
    } while (k > 0);
    return id;
}

std::string bits_of(int64_t v, int width) {
    std::string s;
    for (int b = width - 1; b >= 0; --b) s.push_back(((static_cast<uint64_t>(v) >> b) & 1U) ? '1' : '0');
    return s;
}

void open_out(std::ofstream& out, const std::string& path) {
    out.open(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
}

} // namespace

std::string TraceSignal::element_name(int j) const { return array ? name + "(" + std::to_string(j) + ")" : name; }

int CexTrace::find(const std::string& name) const {
    for (size_t k = 0; k < signals.size(); ++k)
        if (signals[k].name == name) return static_cast<int>(k);
    return -1;
}

int64_t CexTrace::value(size_t step, const std::string& name, int elem) const {
    int k = find(name);
    if (k < 0) throw MissingSymbol("trace has no variable '" + name + "'");
    return steps.at(step).values[static_cast<size_t>(k)].at(static_cast<size_t>(elem));
}

InputFrames encode_inputs(const Circuit& c, const Values& in, int steps) {
    InputFrames frames(static_cast<size_t>(std::max(steps, 1)), std::vector<bool>(c.aig.inputs().size(), false));
    std::vector<int> pos(c.aig.num_nodes(), -1);
    for (size_t k = 0; k < c.aig.inputs().size(); ++k) pos[c.aig.inputs()[k]] = static_cast<int>(k);
    for (const auto& v : c.inputs) {
        auto it = in.find(strip_nondet(v.name));
        if (it == in.end()) continue;
        for (size_t j = 0; j < v.elems.size() && j < it->second.size(); ++j)
            for (size_t b = 0; b < v.elems[j].size(); ++b)
                frames[0][static_cast<size_t>(pos[lit_node(v.elems[j][b])])] = ((static_cast<uint64_t>(it->second[j]) >> b) & 1U) != 0;
    }
    frames.resize(static_cast<size_t>(steps));
    return frames;
}

Values decode_inputs(const Circuit& c, const InputFrames& frames) {
    Values out;
    if (frames.empty()) return out;
    std::vector<int> pos(c.aig.num_nodes(), -1);
    for (size_t k = 0; k < c.aig.inputs().size(); ++k) pos[c.aig.inputs()[k]] = static_cast<int>(k);
    for (const auto& v : c.inputs) {
        auto& vals = out[strip_nondet(v.name)];
        for (const auto& e : v.elems) {
            uint64_t u = 0;
            for (size_t b = 0; b < e.size(); ++b)
                if (frames[0][static_cast<size_t>(pos[lit_node(e[b])])]) u |= uint64_t{1} << b;
            vals.push_back(v.type == Type::Int ? arith::wrap(static_cast<int64_t>(u), v.bits) : static_cast<int64_t>(u));
        }
    }
    return out;
}

int64_t decode_bits(const SimTrace& tr, int step, const BitVec& bits, Type type) {
    uint64_t u = 0;
    for (size_t b = 0; b < bits.size(); ++b)
        if (tr.value(step, bits[b])) u |= uint64_t{1} << b;
    if (type == Type::Int) return arith::wrap(static_cast<int64_t>(u), static_cast<int>(bits.size()));
    return static_cast<int64_t>(u);
}

CexTrace back_translate(const Circuit& c, const SimTrace& tr, const std::string& program) {
    const CircuitVar& pc = need(c, kPc);
    const CircuitVar& nd = need(c, kNotDone);
    CexTrace t;
    t.program = program;
    for (const auto& v : c.vars) {
        const Decl* d = c.olp ? c.olp->find(v.name) : nullptr;
        bool array = d ? d->is_array() : v.elems.size() > 1;
        t.signals.push_back({v.name, v.type, v.bits, static_cast<int>(v.elems.size()), array});
    }
    const LabeledProgram* lp = c.olp && c.olp->source ? c.olp->source.get() : nullptr;
    for (int s = 0; s < tr.steps; ++s) {
        CexStep st;
        for (const auto& v : c.vars) {
            std::vector<int64_t> vals;
            for (const auto& e : v.elems) vals.push_back(decode_bits(tr, s, e, v.type));
            st.values.push_back(std::move(vals));
        }
        st.pc = static_cast<int>(decode_bits(tr, s, pc.elems[0], Type::Label));
        st.notdone = decode_bits(tr, s, nd.elems[0], Type::Bool) != 0;
        st.flags.oob = output_at(c, tr, s, kOutOob);
        st.flags.overflow = output_at(c, tr, s, kOutOverflow);
        st.flags.divzero = output_at(c, tr, s, kOutDivZero);
        st.flags.depth = output_at(c, tr, s, kOutDepth);
        if (lp && st.pc >= 1 && st.pc < lp->done()) st.line = lp->line_of(st.pc);
        t.steps.push_back(std::move(st));
    }
    if (tr.steps > 0) {
        // Nondet inputs are the step-0 values of the variables they seed.
        for (const auto& v : c.inputs) {
            int k = t.find(strip_nondet(v.name));
            if (k >= 0) t.inputs[strip_nondet(v.name)] = t.steps[0].values[static_cast<size_t>(k)];
        }
    }
    return t;
}

std::vector<bool> encode_registers(const Circuit& c, const CexStep& step) {
    std::vector<bool> out;
    for (size_t k = 0; k < c.vars.size(); ++k)
        for (size_t j = 0; j < c.vars[k].elems.size(); ++j)
            for (int b = 0; b < c.vars[k].bits; ++b) out.push_back(((static_cast<uint64_t>(step.values[k][j]) >> b) & 1U) != 0);
    return out;
}

std::vector<bool> register_bits(const Circuit& c, const SimTrace& tr, int step) {
    std::vector<bool> out;
    for (const auto& v : c.vars)
        for (const auto& e : v.elems)
            for (Lit l : e) out.push_back(tr.value(step, l));
    return out;
}

void write_vcd(const CexTrace& t, std::ostream& out) {
    out << "$version j2aig $end\n$timescale 1ns $end\n";
    out << "$scope module " << (t.program.empty() ? "program" : t.program) << " $end\n";
    size_t id = 0;
    std::vector<std::vector<std::string>> ids;
    for (const auto& s : t.signals) {
        std::vector<std::string> row;
        for (int j = 0; j < s.elems; ++j) {
            row.push_back(vcd_id(id++));
            const char* kind = s.type == Type::Int ? "integer" : "wire";
            out << "$var " << kind << ' ' << s.bits << ' ' << row.back() << ' ' << s.element_name(j) << " $end\n";
        }
        ids.push_back(std::move(row));
    }
    out << "$upscope $end\n$enddefinitions $end\n";
    auto emit = [&](size_t k, int j, int64_t v) {
        const auto& s = t.signals[k];
        if (s.bits == 1) out << (v & 1) << ids[k][static_cast<size_t>(j)] << '\n';
        else out << 'b' << bits_of(v, s.bits) << ' ' << ids[k][static_cast<size_t>(j)] << '\n';
    };
    for (size_t step = 0; step < t.steps.size(); ++step) {
        out << '#' << step << '\n';
        if (step == 0) out << "$dumpvars\n";
        for (size_t k = 0; k < t.signals.size(); ++k)
            for (int j = 0; j < t.signals[k].elems; ++j) {
                int64_t v = t.steps[step].values[k][static_cast<size_t>(j)];
                if (step == 0 || v != t.steps[step - 1].values[k][static_cast<size_t>(j)]) emit(k, j, v);
            }
        if (step == 0) out << "$end\n";
    }
    out << '#' << t.steps.size() << '\n';
}

void write_vcd_file(const CexTrace& t, const std::string& path) {
    std::ofstream out;
    open_out(out, path);
    write_vcd(t, out);
}

VcdData read_vcd(const std::string& text) {
    VcdData d;
    std::map<std::string, size_t> by_id;
    std::istringstream in(text);
    std::string tok;
    std::vector<uint64_t> cur;
    bool defs_done = false;
    long long time = -1;
    auto flush_to = [&](long long t) {
        while (static_cast<long long>(d.rows.size()) < t) d.rows.push_back(cur);
    };
    auto set = [&](const std::string& id, uint64_t v) {
        auto it = by_id.find(id);
        if (it == by_id.end()) throw FormatError(0, "unknown VCD identifier '" + id + "'");
        cur[it->second] = v;
    };
    while (in >> tok) {
        if (!defs_done) {
            if (tok == "$var") {
                std::string kind, width, id, name, end;
                in >> kind >> width >> id >> name >> end;
                if (end != "$end") throw FormatError(0, "malformed $var");
                by_id[id] = d.names.size();
                d.names.push_back(name);
                d.widths.push_back(std::stoi(width));
            } else if (tok == "$enddefinitions") {
                in >> tok;
                defs_done = true;
                cur.assign(d.names.size(), 0);
            } else if (tok[0] == '$') {
                while (tok != "$end" && in >> tok) {}
            }
            continue;
        }
        if (tok[0] == '#') {
            long long t = std::stoll(tok.substr(1));
            if (time >= 0) flush_to(t);
            time = t;
        } else if (tok == "$dumpvars" || tok == "$end") {
            continue;
        } else if (tok[0] == 'b') {
            std::string id;
            in >> id;
            uint64_t v = 0;
            for (char ch : tok.substr(1)) v = (v << 1) | (ch == '1' ? 1U : 0U);
            set(id, v);
        } else if (tok[0] == '0' || tok[0] == '1') {
            set(tok.substr(1), tok[0] == '1' ? 1U : 0U);
        } else {
            throw FormatError(0, "unexpected VCD token '" + tok + "'");
        }
    }
    if (!defs_done) throw FormatError(0, "VCD has no $enddefinitions");
    return d;
}

void write_tsv(const CexTrace& t, std::ostream& out) {
    out << "step\tline";
    for (const auto& s : t.signals)
        for (int j = 0; j < s.elems; ++j) out << '\t' << s.element_name(j);
    out << "\toob\toverflow\tdivzero\tdepth\n";
    for (size_t step = 0; step < t.steps.size(); ++step) {
        const CexStep& st = t.steps[step];
        out << step << '\t' << st.line;
        for (const auto& vals : st.values)
            for (int64_t v : vals) out << '\t' << v;
        out << '\t' << st.flags.oob << '\t' << st.flags.overflow << '\t' << st.flags.divzero << '\t' << st.flags.depth << '\n';
    }
}

void write_tsv_file(const CexTrace& t, const std::string& path) {
    std::ofstream out;
    open_out(out, path);
    write_tsv(t, out);
}

TsvData read_tsv(const std::string& text) {
    TsvData d;
    std::istringstream in(text);
    std::string line;
    int ln = 0;
    while (std::getline(in, line)) {
        ++ln;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (line == kNoCounterexample) d.empty_marker = true;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, '\t')) cells.push_back(cell);
        if (d.columns.empty()) {
            if (cells.size() < 2 || cells[0] != "step") throw FormatError(ln, "expected a header starting with 'step'");
            d.columns = cells;
            continue;
        }
        if (cells.size() != d.columns.size()) throw FormatError(ln, "row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(d.columns.size()));
        std::vector<int64_t> row;
        for (const auto& c : cells) {
            try {
                size_t used = 0;
                row.push_back(std::stoll(c, &used));
                if (used != c.size()) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                throw FormatError(ln, "not an integer: '" + c + "'");
            }
        }
        d.rows.push_back(std::move(row));
    }
    if (d.columns.empty() && !d.empty_marker) throw FormatError(ln, "empty trace file");
    return d;
}

} // namespace j2aig
