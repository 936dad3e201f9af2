#include "sseq/dsl.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>
#include <vector>

namespace sseq {

namespace {

bool ident_char(char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '/' || c == '^' || c == '{' || c == '}' || c == '-';
}

bool valid_ident(const std::string& s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), ident_char);
}

struct Token {
    std::string text;
    SourceSpan span;
    bool parenthesized = false;
};

/// Splits one physical line into tokens: parenthesized groups are kept
/// whole (inner whitespace removed), everything else splits on blanks.
std::vector<Token> tokenize_line(const std::string& line, int line_no) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        int col_begin = static_cast<int>(i) + 1;
        if (c == '(') {
            std::string inner;
            std::size_t j = i + 1;
            bool closed = false;
            for (; j < line.size(); ++j) {
                if (line[j] == ')') {
                    closed = true;
                    break;
                }
                if (line[j] == ' ' || line[j] == '\t') continue;
                inner.push_back(line[j]);
            }
            if (!closed)
                throw Error(ErrorKind::Syntax, "unterminated '('",
                            SourceSpan{line_no, col_begin, static_cast<int>(line.size())});
            out.push_back(
                Token{inner, SourceSpan{line_no, col_begin, static_cast<int>(j) + 1}, true});
            i = j + 1;
        } else {
            std::size_t j = i;
            while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' &&
                   line[j] != '(' && line[j] != '#')
                ++j;
            out.push_back(Token{line.substr(i, j - i),
                                SourceSpan{line_no, col_begin, static_cast<int>(j)}, false});
            i = j;
        }
    }
    return out;
}

std::int64_t parse_integer(const Token& tok, const std::string& what) {
    const std::string& s = tok.text;
    std::size_t start = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
    if (s.size() == start)
        throw Error(ErrorKind::Syntax, "expected integer for " + what, tok.span);
    for (std::size_t i = start; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw Error(ErrorKind::Syntax, "expected integer for " + what + ", got '" + s + "'",
                        tok.span);
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(s.c_str(), &end, 10);
    if (errno != 0)
        throw Error(ErrorKind::Syntax, "integer out of range '" + s + "'", tok.span);
    return v;
}

ClassRef parse_ref(const Token& tok, const std::string& what) {
    if (!tok.parenthesized)
        throw Error(ErrorKind::Syntax, "expected (n,s[,i]) for " + what, tok.span);
    std::vector<std::string> parts;
    std::string cur;
    for (char c : tok.text) {
        if (c == ',') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 2 && parts.size() != 3)
        throw Error(ErrorKind::Syntax, "expected (n,s[,i]) for " + what, tok.span);
    auto num = [&](const std::string& s) {
        Token t{s, tok.span, false};
        return parse_integer(t, what);
    };
    ClassRef ref;
    ref.position.stem = num(parts[0]);
    ref.position.filtration = num(parts[1]);
    ref.index = parts.size() == 3 ? static_cast<int>(num(parts[2])) : 0;
    return ref;
}

/// Splits "key=value"; returns false when the token has no '='.
bool split_keyval(const Token& tok, std::string& key, std::string& value) {
    auto eq = tok.text.find('=');
    if (eq == std::string::npos) return false;
    key = tok.text.substr(0, eq);
    value = tok.text.substr(eq + 1);
    return true;
}

SourceSpan statement_span(const std::vector<Token>& toks) {
    return SourceSpan{toks.front().span.line, toks.front().span.col_begin,
                      toks.back().span.col_end};
}

}  // namespace

Chart parse(const std::string& text) {
    std::optional<Chart> chart;
    std::set<std::string> names_seen;

    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<Token> toks = tokenize_line(line, line_no);
        if (toks.empty()) continue;
        const Token& head = toks[0];

        if (!chart && head.text != "grading")
            throw Error(ErrorKind::Syntax, "missing grading header", head.span);

        auto expect_args = [&](std::size_t n) {
            if (toks.size() != n)
                throw Error(ErrorKind::Syntax,
                            "'" + head.text + "' takes " + std::to_string(n - 1) + " argument(s)",
                            statement_span(toks));
        };

        try {
            if (head.text == "grading") {
                if (chart)
                    throw Error(ErrorKind::Syntax, "duplicate grading header", statement_span(toks));
                if (toks.size() < 2)
                    throw Error(ErrorKind::Syntax, "grading needs a convention name", head.span);
                const std::string& kind = toks[1].text;
                if (kind == "adams") {
                    expect_args(2);
                    chart.emplace(Grading::adams());
                } else if (kind == "serre-cohomological") {
                    expect_args(2);
                    chart.emplace(Grading::serre_cohomological());
                } else if (kind == "serre-homological") {
                    expect_args(2);
                    chart.emplace(Grading::serre_homological());
                } else if (kind == "custom") {
                    expect_args(6);
                    chart.emplace(Grading::custom(
                        parse_integer(toks[2], "custom grading"), parse_integer(toks[3], "custom grading"),
                        parse_integer(toks[4], "custom grading"), parse_integer(toks[5], "custom grading")));
                } else {
                    throw Error(ErrorKind::UnknownGrading, "unknown grading '" + kind + "'",
                                toks[1].span);
                }
            } else if (head.text == "lax") {
                expect_args(1);
                chart->set_lax();
            } else if (head.text == "class") {
                if (toks.size() < 2)
                    throw Error(ErrorKind::Syntax, "class needs a position", head.span);
                if (std::count(toks[1].text.begin(), toks[1].text.end(), ',') != 1)
                    throw Error(ErrorKind::Syntax, "class takes (n,s) without an index",
                                toks[1].span);
                ClassRef ref = parse_ref(toks[1], "class position");
                ClassOptions opts;
                bool in_opt = false;
                for (std::size_t i = 2; i < toks.size(); ++i) {
                    if (toks[i].text == "opt") {
                        in_opt = true;
                        continue;
                    }
                    std::string key, value;
                    if (!split_keyval(toks[i], key, value))
                        throw Error(ErrorKind::Syntax, "expected key=value, got '" + toks[i].text + "'",
                                    toks[i].span);
                    if (in_opt) {
                        if (!valid_ident(key) || value.empty())
                            throw Error(ErrorKind::Syntax,
                                        "display options need ident=value, got '" + toks[i].text +
                                            "'",
                                        toks[i].span);
                        opts.display_options[key] = value;
                    } else if (key == "name") {
                        if (!valid_ident(value))
                            throw Error(ErrorKind::Syntax, "invalid name '" + value + "'",
                                        toks[i].span);
                        if (!names_seen.insert(value).second)
                            throw Error(ErrorKind::DuplicateName, "duplicate name '" + value + "'",
                                        toks[i].span);
                        opts.name = value;
                    } else if (key == "tag") {
                        if (!valid_ident(value))
                            throw Error(ErrorKind::Syntax, "invalid tag '" + value + "'", toks[i].span);
                        opts.tag = value;
                    } else {
                        throw Error(ErrorKind::Syntax,
                                    "unknown class option '" + key + "' (use opt for display options)",
                                    toks[i].span);
                    }
                }
                chart->add_class(ref.position, std::move(opts));
            } else if (head.text == "d") {
                expect_args(4);
                int page = static_cast<int>(parse_integer(toks[1], "page"));
                ClassRef src = parse_ref(toks[2], "differential source");
                ClassRef tgt = parse_ref(toks[3], "differential target");
                chart->add_differential(page, src, tgt);
            } else if (head.text == "structline") {
                if (toks.size() < 3)
                    throw Error(ErrorKind::Syntax, "structline needs two endpoints",
                                statement_span(toks));
                ClassRef a = parse_ref(toks[1], "structline endpoint");
                ClassRef b = parse_ref(toks[2], "structline endpoint");
                std::optional<std::string> label;
                std::optional<int> page;
                for (std::size_t i = 3; i < toks.size(); ++i) {
                    std::string key, value;
                    if (!split_keyval(toks[i], key, value))
                        throw Error(ErrorKind::Syntax, "expected key=value, got '" + toks[i].text + "'",
                                    toks[i].span);
                    if (key == "label") {
                        if (!valid_ident(value))
                            throw Error(ErrorKind::Syntax, "invalid label '" + value + "'",
                                        toks[i].span);
                        label = value;
                    } else if (key == "page") {
                        page = static_cast<int>(
                            parse_integer(Token{value, toks[i].span, false}, "structline page"));
                    } else {
                        throw Error(ErrorKind::Syntax, "unknown structline option '" + key + "'",
                                    toks[i].span);
                    }
                }
                chart->add_structline(a, b, label, page);
            } else if (head.text == "replaceclass") {
                expect_args(3);
                ClassRef ref = parse_ref(toks[1], "replaceclass");
                std::string key, value;
                if (!split_keyval(toks[2], key, value) || key != "page")
                    throw Error(ErrorKind::Syntax, "replaceclass needs page=<r>", toks[2].span);
                int page = static_cast<int>(
                    parse_integer(Token{value, toks[2].span, false}, "replaceclass page"));
                chart->replace_class(ref, page);
            } else {
                throw Error(ErrorKind::Syntax, "unknown statement '" + head.text + "'", head.span);
            }
        } catch (const Error& e) {
            if (e.span()) throw;
            throw e.with_span(statement_span(toks));
        }
    }

    if (!chart) throw Error(ErrorKind::Syntax, "missing grading header", SourceSpan{1, 1, 1});
    chart->seal();
    return std::move(*chart);
}

namespace {

std::string ref_text(ClassRef ref) {
    return "(" + std::to_string(ref.position.stem) + "," +
           std::to_string(ref.position.filtration) + "," + std::to_string(ref.index) + ")";
}

}  // namespace

std::string serialize(const Chart& chart) {
    if (!chart.sealed()) throw Error(ErrorKind::Sealed, "serialize requires a sealed chart");
    std::ostringstream out;

    switch (chart.grading().kind) {
        case GradingKind::Adams: out << "grading adams\n"; break;
        case GradingKind::SerreCohomological: out << "grading serre-cohomological\n"; break;
        case GradingKind::SerreHomological: out << "grading serre-homological\n"; break;
        case GradingKind::Custom:
            out << "grading custom " << chart.grading().a << " " << chart.grading().b << " "
                << chart.grading().c << " " << chart.grading().d << "\n";
            break;
    }
    if (!chart.strict_degree()) out << "lax\n";

    for (const ChartClass* cls : chart.classes()) {
        out << "class (" << cls->ref.position.stem << "," << cls->ref.position.filtration << ")";
        if (cls->name) out << " name=" << *cls->name;
        if (cls->tag) out << " tag=" << *cls->tag;
        if (!cls->generations.front().display_options.empty()) {
            out << " opt";
            for (const auto& [key, value] : cls->generations.front().display_options)
                out << " " << key << "=" << value;
        }
        out << "\n";
    }

    // Differentials grouped by ascending page, each group followed by the
    // replaceclass statements for generations born on the next page, so
    // reparsing applies kills and revivals in a valid order.
    std::vector<Differential> diffs(chart.differentials());
    std::sort(diffs.begin(), diffs.end(),
              [](const Differential& x, const Differential& y) {
                  return std::tie(x.page, x.source, x.target) < std::tie(y.page, y.source, y.target);
              });
    std::map<int, std::vector<ClassRef>> revivals;  // page -> refs replaced after that page
    for (const ChartClass* cls : chart.classes())
        for (std::size_t i = 1; i < cls->generations.size(); ++i)
            revivals[cls->generations[i].born_page - 1].push_back(cls->ref);

    std::size_t di = 0;
    auto emit_revivals = [&](int page) {
        auto it = revivals.find(page);
        if (it == revivals.end()) return;
        for (ClassRef ref : it->second)
            out << "replaceclass " << ref_text(ref) << " page=" << page << "\n";
    };
    std::set<int> pages;
    for (const Differential& d : diffs) pages.insert(d.page);
    for (const auto& [page, refs] : revivals) pages.insert(page);
    for (int page : pages) {
        while (di < diffs.size() && diffs[di].page == page) {
            out << "d " << page << " " << ref_text(diffs[di].source) << " "
                << ref_text(diffs[di].target) << "\n";
            ++di;
        }
        emit_revivals(page);
    }

    std::vector<StructLine> lines(chart.structlines());
    std::sort(lines.begin(), lines.end());
    for (const StructLine& line : lines) {
        out << "structline " << ref_text(line.a) << " " << ref_text(line.b);
        if (line.label) out << " label=" << *line.label;
        out << " page=" << line.born_page << "\n";
    }

    return out.str();
}

}  // namespace sseq
