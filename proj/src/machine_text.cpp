// Copyright 2026 The qtmhalt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qtmhalt/machine_text.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <vector>

namespace qtmhalt {

MachineParseError::MachineParseError(std::size_t l, std::size_t c, const std::string &msg)
    : std::runtime_error("line " + std::to_string(l) + ", column " + std::to_string(c) + ": " + msg),
      line(l),
      column(c) {}

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view s, std::size_t base_column = 1) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        std::size_t start = i;
        while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back({std::string(s.substr(start, i - start)), base_column + start});
        }
    }
    return out;
}

struct PendingRule {
    std::size_t line;
    std::string_view text;
};

class MachineParser {
   public:
    explicit MachineParser(std::string_view text) : text_(text) {}

    Qtm parse(const ParseOptions &opts) {
        split_lines();
        std::size_t header_line = 0;
        for (std::size_t n = 0; n < lines_.size(); ++n) {
            std::string_view raw = lines_[n];
            std::size_t first = raw.find_first_not_of(" \t\r");
            if (first == std::string_view::npos) {
                continue;
            }
            std::string_view line = raw.substr(first);
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
                line.remove_suffix(1);
            }
            const std::size_t lineno = n + 1;
            if (line[0] == '#') {
                std::string note(line.substr(1));
                if (!note.empty() && note[0] == ' ') {
                    note.erase(0, 1);
                }
                notes_.push_back(note);
                continue;
            }
            if (!kind_) {
                if (line == "qtm") {
                    kind_ = MachineKind::qtm;
                } else if (line == "rtm") {
                    kind_ = MachineKind::rtm;
                } else {
                    throw MachineParseError(lineno, first + 1, "expected header line 'qtm' or 'rtm'");
                }
                header_line = lineno;
                continue;
            }
            if (line.substr(0, 5) == "rule ") {
                rules_.push_back({lineno, raw});
                continue;
            }
            std::size_t colon = line.find(':');
            if (colon == std::string_view::npos) {
                throw MachineParseError(lineno, first + 1, "expected 'key: value' or 'rule ...'");
            }
            std::string key(line.substr(0, colon));
            if (fields_.count(key)) {
                throw MachineParseError(lineno, first + 1, "duplicate field '" + key + "'");
            }
            fields_[key] = {lineno, first + 1, tokenize(line.substr(colon + 1), first + colon + 2)};
        }
        if (!kind_) {
            throw MachineParseError(1, 1, "missing header line 'qtm' or 'rtm'");
        }

        Qtm m;
        m.kind = *kind_;
        m.notes = notes_;
        m.name = single("name", header_line, /*required=*/false).value_or("unnamed");
        m.symbols = list("alphabet", header_line);
        if (m.symbols.empty() || m.symbols[0] != "B") {
            fail_field("alphabet", "alphabet must start with the blank symbol B");
        }
        check_unique("alphabet", m.symbols);
        m.states = list("states", header_line);
        if (m.states.empty()) {
            fail_field("states", "at least one state is required");
        }
        check_unique("states", m.states);
        std::string init = *single("initial", header_line, true);
        auto init_id = m.state_id(init);
        if (!init_id) {
            fail_field("initial", "unknown state '" + init + "'");
        }
        m.initial = *init_id;
        for (const std::string &h : list("halting", header_line, /*required=*/false)) {
            auto id = m.state_id(h);
            if (!id) {
                fail_field("halting", "unknown state '" + h + "'");
            }
            m.halting.push_back(*id);
        }
        std::sort(m.halting.begin(), m.halting.end());
        if (auto head = single("head", header_line, false)) {
            try {
                std::size_t used = 0;
                m.start_head = std::stoll(*head, &used);
                if (used != head->size()) {
                    throw std::invalid_argument("trailing");
                }
            } catch (const std::exception &) {
                fail_field("head", "expected an integer");
            }
        }
        for (const std::string &w : list("working", header_line, false)) {
            auto id = m.symbol_id(w);
            if (!id) {
                fail_field("working", "unknown symbol '" + w + "'");
            }
            m.working_symbols.push_back(*id);
        }
        bool complete = false;
        if (auto c = single("completion", header_line, false)) {
            if (*c != "auto") {
                fail_field("completion", "expected 'auto'");
            }
            complete = true;
        }
        for (const auto &[key, value] : fields_) {
            static const char *known[] = {"name", "alphabet", "states", "initial", "halting",
                                          "head", "working",  "completion"};
            if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
                throw MachineParseError(value.line, value.column,
                                        "unknown field '" + key + "'");
            }
        }

        m.delta = TransitionTable(m.num_states(), m.num_symbols());
        for (const PendingRule &r : rules_) {
            parse_rule(m, r);
        }
        if (complete) {
            complete_table(m);
        }
        if (!m.delta.total()) {
            for (StateId p = 0; p < m.num_states(); ++p) {
                for (SymbolId s = 0; s < m.num_symbols(); ++s) {
                    if (!m.delta.defined(p, s)) {
                        throw MachineParseError(lines_.size(), 1,
                                                "missing row (" + m.states[p] + ", " + m.symbols[s] +
                                                    "); add it or use 'completion: auto'");
                    }
                }
            }
        }
        if (!opts.defer_checks) {
            validate(m);
        }
        return m;
    }

   private:
    struct Field {
        std::size_t line;
        std::size_t column;
        std::vector<Token> tokens;
    };

    void split_lines() {
        std::size_t start = 0;
        while (start <= text_.size()) {
            std::size_t end = text_.find('\n', start);
            if (end == std::string_view::npos) {
                lines_.push_back(text_.substr(start));
                break;
            }
            lines_.push_back(text_.substr(start, end - start));
            start = end + 1;
        }
    }

    [[noreturn]] void fail_field(const std::string &key, const std::string &msg) const {
        const Field &f = fields_.at(key);
        throw MachineParseError(f.line, f.tokens.empty() ? 1 : f.tokens[0].column, msg);
    }

    std::vector<std::string> list(const std::string &key, std::size_t header_line, bool required = true) const {
        auto it = fields_.find(key);
        if (it == fields_.end()) {
            if (required) {
                throw MachineParseError(header_line, 1, "missing field '" + key + "'");
            }
            return {};
        }
        std::vector<std::string> out;
        for (const Token &t : it->second.tokens) {
            out.push_back(t.text);
        }
        return out;
    }

    std::optional<std::string> single(const std::string &key, std::size_t header_line, bool required) const {
        auto values = list(key, header_line, required);
        if (values.empty()) {
            if (required) {
                fail_field(key, "missing value");
            }
            return std::nullopt;
        }
        if (values.size() != 1) {
            fail_field(key, "expected a single value");
        }
        return values[0];
    }

    void check_unique(const std::string &key, const std::vector<std::string> &names) const {
        for (std::size_t i = 0; i < names.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (names[i] == names[j]) {
                    fail_field(key, "duplicate name '" + names[i] + "'");
                }
            }
        }
    }

    void parse_rule(Qtm &m, const PendingRule &r) {
        std::string_view raw = r.text;
        std::size_t arrow = raw.find("->");
        if (arrow == std::string_view::npos) {
            throw MachineParseError(r.line, 1, "rule is missing '->'");
        }
        std::vector<Token> lhs = tokenize(raw.substr(0, arrow));
        if (lhs.size() != 3) {
            throw MachineParseError(r.line, lhs.empty() ? 1 : lhs[0].column, "expected 'rule <state> <symbol> ->'");
        }
        auto p = m.state_id(lhs[1].text);
        if (!p) {
            throw MachineParseError(r.line, lhs[1].column, "unknown state '" + lhs[1].text + "'");
        }
        auto s = m.symbol_id(lhs[2].text);
        if (!s) {
            throw MachineParseError(r.line, lhs[2].column, "unknown symbol '" + lhs[2].text + "'");
        }
        if (m.delta.defined(*p, *s)) {
            throw MachineParseError(r.line, lhs[1].column,
                                    "duplicate row (" + lhs[1].text + ", " + lhs[2].text + ")");
        }

        Row row;
        std::size_t pos = arrow + 2;
        while (pos <= raw.size()) {
            std::size_t comma = raw.find(',', pos);
            std::size_t end = comma == std::string_view::npos ? raw.size() : comma;
            std::string_view entry = raw.substr(pos, end - pos);
            std::vector<Token> toks = tokenize(entry, pos + 1);
            if (toks.size() < 4) {
                throw MachineParseError(r.line, pos + 1, "expected '<amplitude> <state> <symbol> <L|R>'");
            }
            const Token &dir_tok = toks[toks.size() - 1];
            const Token &sym_tok = toks[toks.size() - 2];
            const Token &state_tok = toks[toks.size() - 3];
            Direction d;
            if (dir_tok.text == "L") {
                d = Direction::L;
            } else if (dir_tok.text == "R") {
                d = Direction::R;
            } else {
                throw MachineParseError(r.line, dir_tok.column, "direction must be L or R");
            }
            auto q = m.state_id(state_tok.text);
            if (!q) {
                throw MachineParseError(r.line, state_tok.column, "unknown state '" + state_tok.text + "'");
            }
            auto t = m.symbol_id(sym_tok.text);
            if (!t) {
                throw MachineParseError(r.line, sym_tok.column, "unknown symbol '" + sym_tok.text + "'");
            }
            std::size_t amp_begin = toks[0].column - 1;
            std::string_view amp_text = raw.substr(amp_begin, state_tok.column - 1 - amp_begin);
            Amplitude amp;
            try {
                amp = amp_parse(amp_text);
            } catch (const AmplitudeParseError &e) {
                throw MachineParseError(r.line, amp_begin + 1 + e.position, e.what());
            }
            if (amp.is_zero()) {
                throw MachineParseError(r.line, amp_begin + 1, "zero amplitude");
            }
            Transition tr{amp, *q, *t, d};
            for (const Transition &prev : row) {
                if (prev.same_target(tr)) {
                    throw MachineParseError(r.line, state_tok.column, "duplicate target in row");
                }
            }
            row.push_back(std::move(tr));
            if (comma == std::string_view::npos) {
                break;
            }
            pos = comma + 1;
        }
        m.delta.set_row(*p, *s, std::move(row));
    }

    std::string_view text_;
    std::vector<std::string_view> lines_;
    std::optional<MachineKind> kind_;
    std::map<std::string, Field> fields_;
    std::vector<PendingRule> rules_;
    std::vector<std::string> notes_;
};

std::string join(const std::vector<std::string> &v) {
    std::string out;
    for (const auto &s : v) {
        if (!out.empty()) {
            out += ' ';
        }
        out += s;
    }
    return out;
}

}  // namespace

Qtm parse_machine_text(std::string_view text, const ParseOptions &opts) { return MachineParser(text).parse(opts); }

Qtm load_machine_file(const std::string &path, const ParseOptions &opts) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open machine file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_machine_text(buf.str(), opts);
}

std::string print_machine_text(const Qtm &m) {
    std::ostringstream out;
    for (const auto &note : m.notes) {
        out << "# " << note << '\n';
    }
    out << (m.kind == MachineKind::rtm ? "rtm" : "qtm") << '\n';
    out << "name: " << m.name << '\n';
    out << "alphabet: " << join(m.symbols) << '\n';
    out << "states: " << join(m.states) << '\n';
    out << "initial: " << m.states[m.initial] << '\n';
    std::vector<std::string> halting;
    for (StateId h : m.halting) {
        halting.push_back(m.states[h]);
    }
    out << "halting: " << join(halting) << '\n';
    if (m.start_head != 0) {
        out << "head: " << m.start_head << '\n';
    }
    if (!m.working_symbols.empty()) {
        std::vector<std::string> working;
        for (SymbolId s : m.working_symbols) {
            working.push_back(m.symbols[s]);
        }
        out << "working: " << join(working) << '\n';
    }
    for (StateId p = 0; p < m.num_states(); ++p) {
        for (SymbolId s = 0; s < m.num_symbols(); ++s) {
            if (!m.delta.defined(p, s)) {
                continue;
            }
            out << "rule " << m.states[p] << ' ' << m.symbols[s] << " ->";
            bool first = true;
            for (const Transition &t : m.row(p, s)) {
                out << (first ? " " : ", ") << t.amplitude.str() << ' ' << m.states[t.state] << ' '
                    << m.symbols[t.symbol] << ' ' << direction_char(t.dir);
                first = false;
            }
            out << '\n';
        }
    }
    return out.str();
}

}  // namespace qtmhalt
