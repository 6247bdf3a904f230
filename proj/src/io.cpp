#include "electctl/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace electctl {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            parts.push_back(trim(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    parts.push_back(trim(cur));
    return parts;
}

bool valid_token(const std::string& t) {
    if (t.empty()) return false;
    for (char ch : t)
        if (!isalnum(static_cast<unsigned char>(ch)) && ch != '_') return false;
    return true;
}

struct Line {
    int number;
    std::string text;
};

std::vector<Line> logical_lines(const std::string& text) {
    std::vector<Line> lines;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        std::string t = trim(raw);
        if (!t.empty()) lines.push_back({number, t});
    }
    return lines;
}

}  // namespace

Election parse_election(const std::string& text) {
    Election e;
    std::map<std::string, CandidateId> ids;
    bool have_candidates = false;
    std::string axis_value;
    int axis_line = 0;
    enum class Section { Header, Registered, UnregisteredVoters, UnregisteredCandidates };
    Section section = Section::Header;

    auto lookup = [&](const std::string& token, int line) {
        auto it = ids.find(token);
        if (it == ids.end()) throw ParseError(line, "unknown candidate '" + token + "'");
        return it->second;
    };

    auto add_candidates = [&](const std::string& value, int line, bool registered) {
        for (const std::string& token : split(value, ',')) {
            if (!valid_token(token)) throw ParseError(line, "invalid candidate token '" + token + "'");
            if (ids.count(token)) throw ParseError(line, "duplicate candidate '" + token + "'");
            CandidateId id = static_cast<CandidateId>(e.names.size());
            ids[token] = id;
            e.names.push_back(token);
            (registered ? e.candidates : e.unregistered_candidates).push_back(id);
        }
    };

    auto parse_ballot = [&](const std::string& line_text, int line) {
        std::string body = line_text;
        long long copies = 1;
        std::size_t colon = body.find(':');
        if (colon != std::string::npos) {
            std::string head = trim(body.substr(0, colon));
            bool numeric = !head.empty() && std::all_of(head.begin(), head.end(), [](char c) {
                return isdigit(static_cast<unsigned char>(c));
            });
            if (numeric) {
                if (head.size() > 9) throw ParseError(line, "ballot multiplicity too large");
                copies = std::stoll(head);
                body = trim(body.substr(colon + 1));
            }
        }
        if (copies < 0) throw ParseError(line, "negative ballot multiplicity");

        Ballot b;
        if (!body.empty() && body.front() == '{') {
            if (e.kind != BallotKind::Approval)
                throw ParseError(line, "approval ballot under ordinal ballot_type");
            if (body.back() != '}') throw ParseError(line, "unterminated approval set");
            std::string inner = trim(body.substr(1, body.size() - 2));
            if (!inner.empty())
                for (const std::string& token : split(inner, ','))
                    b.items.push_back(lookup(token, line));
            std::sort(b.items.begin(), b.items.end());
            for (std::size_t i = 1; i < b.items.size(); ++i)
                if (b.items[i] == b.items[i - 1])
                    throw ParseError(line, "candidate approved twice");
        } else {
            if (e.kind != BallotKind::Ordinal)
                throw ParseError(line, "ordinal ballot under approval ballot_type");
            std::vector<char> seen(e.names.size(), 0);
            for (const std::string& token : split(body, '>')) {
                CandidateId c = lookup(token, line);
                if (seen[c]) throw ParseError(line, "candidate '" + token + "' ranked twice");
                seen[c] = 1;
                b.items.push_back(c);
            }
            for (std::size_t c = 0; c < e.names.size(); ++c)
                if (!seen[c])
                    throw ParseError(line, "ranking is missing candidate '" + e.names[c] + "'");
        }
        auto& target = section == Section::Registered ? e.registered : e.unregistered;
        for (long long i = 0; i < copies; ++i) target.push_back(b);
    };

    for (const Line& line : logical_lines(text)) {
        const std::string& t = line.text;
        if (t.front() == '[') {
            if (t == "[election]")
                section = Section::Header;
            else if (t == "[registered]")
                section = Section::Registered;
            else if (t == "[unregistered_voters]")
                section = Section::UnregisteredVoters;
            else if (t == "[unregistered_candidates]")
                section = Section::UnregisteredCandidates;
            else
                throw ParseError(line.number, "unknown section " + t);
            continue;
        }

        if (section == Section::Header) {
            std::size_t eq = t.find('=');
            if (eq == std::string::npos) throw ParseError(line.number, "expected key = value");
            std::string key = trim(t.substr(0, eq));
            std::string value = trim(t.substr(eq + 1));
            if (key == "candidates") {
                if (have_candidates) throw ParseError(line.number, "candidates given twice");
                have_candidates = true;
                add_candidates(value, line.number, true);
            } else if (key == "axis") {
                axis_value = value;
                axis_line = line.number;
            } else if (key == "ballot_type") {
                if (value == "ordinal")
                    e.kind = BallotKind::Ordinal;
                else if (value == "approval")
                    e.kind = BallotKind::Approval;
                else
                    throw ParseError(line.number, "ballot_type must be ordinal or approval");
            } else {
                throw ParseError(line.number, "unknown key '" + key + "'");
            }
            continue;
        }

        if (section == Section::UnregisteredCandidates) {
            add_candidates(t, line.number, false);
            continue;
        }

        if (!have_candidates) throw ParseError(line.number, "ballots before candidates line");
        parse_ballot(t, line.number);
    }

    if (!have_candidates) throw ParseError(1, "missing candidates line");

    if (!axis_value.empty()) {
        SocietalAxis axis;
        std::vector<char> seen(e.names.size(), 0);
        for (const std::string& token : split(axis_value, '<')) {
            auto it = ids.find(token);
            if (it == ids.end()) throw ParseError(axis_line, "unknown candidate '" + token + "'");
            if (seen[it->second])
                throw ParseError(axis_line, "candidate '" + token + "' on the axis twice");
            seen[it->second] = 1;
            axis.push_back(it->second);
        }
        for (std::size_t c = 0; c < e.names.size(); ++c)
            if (!seen[c])
                throw ParseError(axis_line,
                                 "axis does not cover candidate '" + e.names[c] + "'");
        e.axis = axis;
    }

    validate_election(e);
    return e;
}

namespace {

std::string ballot_text(const Election& e, const Ballot& b) {
    std::string out;
    if (e.kind == BallotKind::Approval) {
        out += "{";
        for (std::size_t i = 0; i < b.items.size(); ++i)
            out += (i ? ", " : "") + e.names[b.items[i]];
        out += "}";
    } else {
        for (std::size_t i = 0; i < b.items.size(); ++i)
            out += (i ? " > " : "") + e.names[b.items[i]];
    }
    return out;
}

void serialize_ballots(const Election& e, const std::vector<Ballot>& ballots, std::string& out) {
    // Adjacent identical ballots collapse into a multiplicity prefix.
    for (std::size_t i = 0; i < ballots.size();) {
        std::size_t j = i;
        while (j < ballots.size() && ballots[j] == ballots[i]) ++j;
        out += std::to_string(j - i) + ": " + ballot_text(e, ballots[i]) + "\n";
        i = j;
    }
}

}  // namespace

std::string serialize_election(const Election& e) {
    std::string out = "candidates = ";
    for (std::size_t i = 0; i < e.candidates.size(); ++i)
        out += (i ? ", " : "") + e.names[e.candidates[i]];
    out += "\n";
    if (e.axis) {
        out += "axis = ";
        for (std::size_t i = 0; i < e.axis->size(); ++i)
            out += (i ? " < " : "") + e.names[(*e.axis)[i]];
        out += "\n";
    }
    out += std::string("ballot_type = ") +
           (e.kind == BallotKind::Ordinal ? "ordinal" : "approval") + "\n";
    if (!e.unregistered_candidates.empty()) {
        out += "[unregistered_candidates]\n";
        for (std::size_t i = 0; i < e.unregistered_candidates.size(); ++i)
            out += (i ? ", " : "") + e.names[e.unregistered_candidates[i]];
        out += "\n";
    }
    out += "[registered]\n";
    serialize_ballots(e, e.registered, out);
    if (!e.unregistered.empty()) {
        out += "[unregistered_voters]\n";
        serialize_ballots(e, e.unregistered, out);
    }
    return out;
}

X3CInstance parse_x3c(const std::string& text) {
    X3CInstance src;
    std::map<std::string, int> ids;
    for (const Line& line : logical_lines(text)) {
        std::size_t eq = line.text.find('=');
        if (eq == std::string::npos) throw ParseError(line.number, "expected key = value");
        std::string key = trim(line.text.substr(0, eq));
        std::string value = trim(line.text.substr(eq + 1));
        if (key == "ground") {
            for (const std::string& token : split(value, ',')) {
                if (!valid_token(token)) throw ParseError(line.number, "invalid token '" + token + "'");
                if (ids.count(token)) throw ParseError(line.number, "duplicate element '" + token + "'");
                ids[token] = static_cast<int>(src.ground.size());
                src.ground.push_back(token);
            }
        } else if (key == "set") {
            std::istringstream in(value);
            std::vector<int> members;
            std::string token;
            while (in >> token) {
                auto it = ids.find(token);
                if (it == ids.end())
                    throw ParseError(line.number, "unknown element '" + token + "'");
                members.push_back(it->second);
            }
            if (members.size() != 3)
                throw ParseError(line.number, "sets must have exactly 3 members");
            src.sets.push_back({members[0], members[1], members[2]});
        } else {
            throw ParseError(line.number, "unknown key '" + key + "'");
        }
    }
    validate_x3c(src);
    return src;
}

std::string serialize_x3c(const X3CInstance& src) {
    std::string out = "ground = ";
    for (std::size_t i = 0; i < src.ground.size(); ++i) out += (i ? ", " : "") + src.ground[i];
    out += "\n";
    for (const auto& s : src.sets)
        out += "set = " + src.ground[static_cast<std::size_t>(s[0])] + " " +
               src.ground[static_cast<std::size_t>(s[1])] + " " +
               src.ground[static_cast<std::size_t>(s[2])] + "\n";
    return out;
}

BipartiteGraph parse_bipartite(const std::string& text) {
    BipartiteGraph g;
    std::map<std::string, int> left_ids, right_ids;
    for (const Line& line : logical_lines(text)) {
        std::size_t eq = line.text.find('=');
        if (eq == std::string::npos) throw ParseError(line.number, "expected key = value");
        std::string key = trim(line.text.substr(0, eq));
        std::string value = trim(line.text.substr(eq + 1));
        if (key == "left" || key == "right") {
            auto& names = key == "left" ? g.left : g.right;
            auto& table = key == "left" ? left_ids : right_ids;
            for (const std::string& token : split(value, ',')) {
                if (!valid_token(token)) throw ParseError(line.number, "invalid token '" + token + "'");
                if (left_ids.count(token) || right_ids.count(token))
                    throw ParseError(line.number, "duplicate vertex '" + token + "'");
                table[token] = static_cast<int>(names.size());
                names.push_back(token);
            }
        } else if (key == "edge") {
            std::istringstream in(value);
            std::string a, b, extra;
            if (!(in >> a >> b) || (in >> extra))
                throw ParseError(line.number, "edges take exactly two vertices");
            auto ia = left_ids.find(a);
            auto ib = right_ids.find(b);
            if (ia == left_ids.end()) throw ParseError(line.number, "unknown left vertex '" + a + "'");
            if (ib == right_ids.end())
                throw ParseError(line.number, "unknown right vertex '" + b + "'");
            g.edges.push_back({ia->second, ib->second});
        } else {
            throw ParseError(line.number, "unknown key '" + key + "'");
        }
    }
    validate_graph(g);
    return g;
}

std::string serialize_bipartite(const BipartiteGraph& g) {
    std::string out = "left = ";
    for (std::size_t i = 0; i < g.left.size(); ++i) out += (i ? ", " : "") + g.left[i];
    out += "\nright = ";
    for (std::size_t i = 0; i < g.right.size(); ++i) out += (i ? ", " : "") + g.right[i];
    out += "\n";
    for (const auto& [x, y] : g.edges)
        out += "edge = " + g.left[static_cast<std::size_t>(x)] + " " +
               g.right[static_cast<std::size_t>(y)] + "\n";
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace electctl
