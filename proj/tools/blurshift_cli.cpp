// Command-line front end for blur shift presentations and codes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "blurshift/code.hpp"
#include "blurshift/graph.hpp"
#include "blurshift/metric.hpp"
#include "blurshift/sampling.hpp"
#include "blurshift/shift.hpp"

using namespace blurshift;

namespace {

enum Exit { kOk = 0, kInvalid = 1, kUnknown = 2, kCap = 3 };

struct Options {
    std::string format = "text";
    uint64_t seed = 1;
    size_t horizon = 20;
    std::string cap = "1000000";
    bool strict = false;
};

// Text mode prints the lines; structured mode prints "key: value" pairs.
class Report {
public:
    void line(std::string s) { lines_.push_back(std::move(s)); }
    void field(std::string k, std::string v) { fields_.emplace_back(std::move(k), std::move(v)); }
    void unknown() { unknown_ = true; }
    bool has_unknown() const { return unknown_; }
    void print(const Options& o) const {
        if (o.format == "structured") {
            for (const auto& [k, v] : fields_) std::cout << k << ": " << v << "\n";
        } else {
            for (const auto& l : lines_) std::cout << l << "\n";
        }
    }

private:
    std::vector<std::string> lines_;
    std::vector<std::pair<std::string, std::string>> fields_;
    bool unknown_ = false;
};

Presentation load_valid(const std::string& path) {
    Presentation p = Presentation::load(path);
    ValidationReport v = validate_presentation(p);
    if (!v.ok()) throw Error(v.errors.front().code, v.errors.front().message);
    return p;
}

std::string word_text(const Word& w) { return "[" + to_string(w) + "]"; }

void cmd_validate(const std::string& path, Report& r, int& status) {
    Presentation p = Presentation::load(path);
    ValidationReport v = validate_presentation(p);
    for (const Issue& e : v.errors) {
        r.line("error " + e.code + ": " + e.message);
        r.field("error", e.code + ": " + e.message);
    }
    for (const Issue& w : v.warnings) {
        r.line("warning " + w.code + ": " + w.message);
        r.field("warning", w.code + ": " + w.message);
    }
    r.line(v.ok() ? "valid" : "invalid");
    r.field("valid", v.ok() ? "true" : "false");
    if (!v.ok()) status = kInvalid;
}

void cmd_member(const std::string& path, const std::string& point, Report& r) {
    Presentation p = load_valid(path);
    Point x = parse_point(point, p.family);
    Membership m = sigma_member(p, x);
    std::string where = m.stratum ? "stratum " + std::to_string(*m.stratum) : "in Λ";
    if (m.member) r.line("in Σ_Λ (" + where + ")");
    else r.line("not in Σ_Λ (" + m.reason + ")");
    r.field("member", m.member ? "true" : "false");
    r.field("stratum", m.stratum ? std::to_string(*m.stratum) : "none");
    if (!m.member) r.field("reason", m.reason);
}

void cmd_boundary(const std::string& path, const std::string& word, Report& r) {
    Presentation p = load_valid(path);
    Word alpha = parse_prefix(word, p.family).word;
    if (!in_language(p, alpha)) throw Error("NotInLanguage", word_text(alpha) + " is not in the language");
    ActiveBlurs a = blurs_meeting(follower_of_word(p, alpha), p.family, p.constant_bound());
    r.line("boundary points after " + word_text(alpha) + ": " + a.text(p.family));
    r.field("word", word_text(alpha));
    r.field("blurs", a.text(p.family));
}

void cmd_distance(const std::string& path, const std::string& xs, const std::string& ys, const Options& o,
                  Report& r) {
    Presentation p = load_valid(path);
    PrefixEnumeration e(p.family, o.cap == "none" ? kIndexMax : parse_index(o.cap));
    Dyadic d = distance(e, parse_point(xs, p.family), parse_point(ys, p.family));
    r.line(d.text());
    r.field("distance", d.text());
}

void cmd_converge(const std::string& path, const std::string& fam, const std::string& lim, const Options& o,
                  Report& r) {
    Presentation p = load_valid(path);
    SequenceFamily s = parse_sequence_family(fam, p.family);
    Point limit = parse_point(lim, p.family);
    bool yes = converges(p, s, limit);
    r.line(std::string(yes ? "converges to " : "does not converge to ") + point_text(limit, p.family));
    r.field("converges", yes ? "true" : "false");
    PrefixEnumeration e(p.family, o.cap == "none" ? kIndexMax : parse_index(o.cap));
    auto members = family_members(p, s, std::min<size_t>(o.horizon, 8));
    for (size_t n = 0; n < members.size(); ++n) {
        std::string d;
        try {
            d = distance(e, members[n], limit).text();
        } catch (const CapExceeded&) {
            d = "beyond cap";
        }
        r.line("  x" + std::to_string(n) + " = " + point_text(members[n], p.family) + "  d = " + d);
        r.field("member" + std::to_string(n), point_text(members[n], p.family));
    }
}

void cmd_is_compact(const std::string& path, Report& r) {
    Presentation p = load_valid(path);
    Compactness c = is_compact(p);
    r.line(c.detail);
    r.field("compact", c.compact ? "true" : "false");
    r.field("active_blurs", c.active.text(p.family));
    if (!c.compact)
        if (auto w = non_compactness_witness(p)) {
            r.line("witness: " + w->description);
            r.field("witness", w->description);
        }
}

void cmd_locally_compact(const std::string& path, Report& r) {
    Presentation p = load_valid(path);
    LocalCompactness lc = is_locally_compact(p);
    r.line(verdict_text(lc.verdict) + ": " + lc.detail);
    r.field("locally_compact", verdict_text(lc.verdict));
    r.field("detail", lc.detail);
    if (lc.verdict == LocalCompactness::Verdict::Unknown) r.unknown();
}

void cmd_report(const std::string& path, Report& r) {
    Presentation p = load_valid(path);
    CountabilityReport c = countability_metrizability_report(p);
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    std::vector<std::pair<std::string, bool>> rows{{"separable", c.separable},
                                                   {"first_countable", c.first_countable},
                                                   {"second_countable", c.second_countable},
                                                   {"metrizable", c.metrizable},
                                                   {"compact", c.compact}};
    for (const auto& [k, v] : rows) {
        r.line(k + ": " + yn(v));
        r.field(k, yn(v));
    }
    r.line("note: " + c.note);
    r.field("note", c.note);
}

void cmd_graph(const std::string& path, const std::string& dot, Report& r) {
    Presentation p = load_valid(path);
    LabeledGraph g = build_blur_graph(p);
    std::string text = dot_export(g);
    if (!dot.empty()) {
        std::ofstream out(dot);
        if (!out) throw Error("FileNotWritable", "cannot write " + dot);
        out << text;
    }
    size_t blurs = 0;
    for (const auto& v : g.vertices) blurs += v.is_blur;
    r.line(std::to_string(g.vertices.size() - blurs) + " follower classes, " + std::to_string(blurs) + " blur vertices, " +
           std::to_string(g.edges.size()) + " edge schemas");
    for (const auto& e : g.edges)
        r.line("  " + g.vertices[e.from].label + " -> " + g.vertices[e.to].label + " [" + e.label + "]");
    r.field("classes", std::to_string(g.vertices.size() - blurs));
    r.field("blur_vertices", std::to_string(blurs));
    r.field("edges", std::to_string(g.edges.size()));
    if (dot.empty()) r.line(text);
}

void cmd_language(const std::string& path, size_t n, size_t k, Report& r) {
    Presentation p = load_valid(path);
    auto words = graph_language(build_blur_graph(p), n, k);
    for (const auto& w : words) {
        r.line(glyph_word_text(w, p.family));
        r.field("word", glyph_word_text(w, p.family));
    }
}

void cmd_shift_continuity(const std::string& path, Report& r) {
    Presentation p = load_valid(path);
    ContinuityReport rep = shift_continuity_report(p);
    if (rep.at_blurs.empty()) r.line("no blur fixed points");
    for (const auto& b : rep.at_blurs) {
        r.line("at ~" + b.blur + ": " + verdict_text(b.verdict) + " (" + b.detail + ")");
        r.field(b.blur, verdict_text(b.verdict));
        if (b.verdict == BlurContinuity::Verdict::Unknown) r.unknown();
    }
}

void cmd_code_apply(const std::string& path, const std::string& point, size_t n, Report& r) {
    Code c = Code::load(path);
    Point x = parse_point(point, c.domain.family);
    CodeOutput out = apply_code(c, x, n);
    std::string coords;
    for (size_t k = 0; k < out.coords.size(); ++k) coords += (k ? " " : "") + glyph_text(out.coords[k], c.codomain.family);
    r.line(coords);
    r.field("coordinates", coords);
    if (out.point) {
        r.line("= " + point_text(*out.point, c.codomain.family));
        r.field("point", point_text(*out.point, c.codomain.family));
    }
}

void cmd_code_commute(const std::string& path, size_t samples, const Options& o, Report& r, int& status) {
    Code c = Code::load(path);
    Sampler s(c.domain, o.seed);
    std::vector<Point> pts;
    for (size_t k = 0; k < samples; ++k) pts.push_back(s.random_point());
    CheckResult res = commute_check(c, pts, o.horizon);
    r.line(res.ok ? "commutes on " + std::to_string(samples) + " samples" : "fails: " + res.witness);
    r.field("commutes", res.ok ? "true" : "false");
    if (!res.ok) {
        r.field("witness", res.witness);
        status = kInvalid;
    }
}

void cmd_code_length(const std::string& path, const Options& o, Report& r) {
    Code c = Code::load(path);
    LengthPreserving lp = length_preserving_check(c, o.seed);
    std::string v = tri_text(lp.verdict);
    r.line(lp.witness.empty() ? v : v + ": " + lp.witness);
    r.field("length_preserving", v);
    if (!lp.witness.empty()) r.field("witness", lp.witness);
    if (lp.verdict == Tri::Unknown) r.unknown();
}

void cmd_code_continuity(const std::string& path, Report& r) {
    Code c = Code::load(path);
    for (const auto& v : chl_condition_report(c)) {
        r.line(v.name + ": " + tri_text(v.verdict) + (v.detail.empty() ? "" : " (" + v.detail + ")"));
        r.field(v.name, tri_text(v.verdict));
        if (v.verdict == Tri::Unknown) r.unknown();
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Blur shift spaces: membership, compactness, metric, graphs and codes"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "structured"}));
    app.add_option("--seed", o.seed, "Sampling seed");
    app.add_option("--horizon", o.horizon, "Number of coordinates to compute");
    app.add_option("--cap", o.cap, "Largest prefix index the metric may use (\"none\" lifts it)");
    app.add_flag("--strict", o.strict, "Exit with status 2 on unknown verdicts");

    Report rep;
    int status = kOk;
    std::function<void()> run;
    std::string file, a1, a2, dot;
    size_t n = 2, k = 10, samples = 100;

    auto file_cmd = [&](const char* name, const char* help) {
        auto* sc = app.add_subcommand(name, help);
        sc->add_option("file", file, "Presentation file")->required();
        return sc;
    };
    auto* validate = file_cmd("validate", "Check a presentation file");
    validate->callback([&] { run = [&] { cmd_validate(file, rep, status); }; });
    auto* member = file_cmd("member", "Decide membership of a point");
    member->add_option("point", a1)->required();
    member->callback([&] { run = [&] { cmd_member(file, a1, rep); }; });
    auto* boundary = file_cmd("boundary", "Blur points extending a word");
    boundary->add_option("word", a1, "Word, e.g. \"0.5 1.2\" (empty by default)");
    boundary->callback([&] { run = [&] { cmd_boundary(file, a1, rep); }; });
    auto* dist = file_cmd("distance", "Distance between two points");
    dist->add_option("x", a1)->required();
    dist->add_option("y", a2)->required();
    dist->callback([&] { run = [&] { cmd_distance(file, a1, a2, o, rep); }; });
    auto* conv = file_cmd("converge", "Decide convergence of a sequence family");
    conv->add_option("family", a1)->required();
    conv->add_option("limit", a2)->required();
    conv->callback([&] { run = [&] { cmd_converge(file, a1, a2, o, rep); }; });
    file_cmd("is-compact", "Decide compactness")->callback([&] { run = [&] { cmd_is_compact(file, rep); }; });
    file_cmd("locally-compact", "Decide local compactness")->callback([&] {
        run = [&] { cmd_locally_compact(file, rep); };
    });
    file_cmd("report", "Countability and metrizability")->callback([&] { run = [&] { cmd_report(file, rep); }; });
    auto* graph = file_cmd("graph", "Build the labelled graph");
    graph->add_option("--dot", dot, "Write DOT to this path");
    graph->callback([&] { run = [&] { cmd_graph(file, dot, rep); }; });
    auto* lang = file_cmd("language", "Sampled words of the graph language");
    lang->add_option("-n", n, "Word length");
    lang->add_option("-k", k, "Number of words");
    lang->callback([&] { run = [&] { cmd_language(file, n, k, rep); }; });
    file_cmd("shift-continuity", "Continuity of the shift map at blur points")->callback([&] {
        run = [&] { cmd_shift_continuity(file, rep); };
    });

    auto* code = app.add_subcommand("code", "Sliding block codes");
    code->require_subcommand(1);
    auto code_cmd = [&](const char* name, const char* help) {
        auto* sc = code->add_subcommand(name, help);
        sc->add_option("file", file, "Code file")->required();
        return sc;
    };
    auto* apply = code_cmd("apply", "Apply a code to a point");
    apply->add_option("point", a1)->required();
    apply->add_option("-n", n, "Number of output coordinates");
    apply->callback([&] { run = [&] { cmd_code_apply(file, a1, n, rep); }; });
    auto* commute = code_cmd("commute", "Check commutation with the shift on samples");
    commute->add_option("--samples", samples, "Number of sample points");
    commute->callback([&] { run = [&] { cmd_code_commute(file, samples, o, rep, status); }; });
    code_cmd("length-preserving", "Check length preservation")->callback([&] {
        run = [&] { cmd_code_length(file, o, rep); };
    });
    code_cmd("continuity", "Continuity conditions")->callback([&] { run = [&] { cmd_code_continuity(file, rep); }; });

    CLI11_PARSE(app, argc, argv);
    try {
        run();
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCap;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    rep.print(o);
    if (status != kOk) return status;
    if (o.strict && rep.has_unknown()) return kUnknown;
    return kOk;
}
