#include <gtest/gtest.h>

#include "blurshift/code.hpp"
#include "blurshift/sampling.hpp"
#include "blurshift/shift.hpp"
#include "oracles.hpp"

using namespace blurshift;
using oracle::data_path;

namespace {

Symbol s(uint64_t c, uint64_t i) { return Symbol{c, i}; }

Code load_code(const std::string& name) { return Code::load(data_path("codes/" + name + ".code")); }

// OTW points with heads over 0.0 .. 0.3, ending in the blur or a short cycle.
std::vector<Point> otw_probes(const BlurFamily& f) {
    std::vector<Symbol> syms = {s(0, 0), s(0, 1), s(0, 2), s(0, 3)};
    std::vector<Word> heads = {{}};
    for (size_t len = 1; len <= 3; ++len) {
        std::vector<Word> more;
        for (const auto& h : heads)
            if (h.size() == len - 1)
                for (auto a : syms) {
                    Word w = h;
                    w.push_back(a);
                    more.push_back(w);
                }
        heads.insert(heads.end(), more.begin(), more.end());
    }
    std::vector<Point> out;
    for (const auto& h : heads) {
        out.push_back(Point::blur_tail(h, f.resolve("A")));
        out.push_back(Point::periodic(h, {s(0, 2)}));
        out.push_back(Point::periodic(h, {s(0, 1), s(0, 7)}));
    }
    return out;
}

std::string table(const Code& c) {
    std::string out;
    for (const auto& v : chl_condition_report(c)) out += v.name + "=" + tri_text(v.verdict) + " ";
    return out;
}

}  // namespace

TEST(FiniteSets, ComplementIsExactAndInvolutive) {
    Presentation otw = Presentation::load(data_path("otw.shift"));
    const BlurFamily& f = otw.family;
    std::vector<std::string> conds = {"x0 = 0.1", "x0 is blur", "x0 = 0.1 and x1 is ~A", "x0 in {0.0, 0.2} or x2 is blur",
                                      "x1 is blur except ~A", "x0 is blur only ~A and x1 = 0.3"};
    auto probes = otw_probes(f);
    for (const auto& text : conds) {
        FiniteSet a = parse_condition(text, f);
        FiniteSet na = fds_complement(a, f), nna = fds_complement(na, f);
        for (const auto& x : probes) {
            bool in = fds_member(a, x, f);
            EXPECT_NE(in, fds_member(na, x, f)) << text << " @ " << point_text(x, f);
            EXPECT_EQ(in, fds_member(nna, x, f)) << text;
            EXPECT_TRUE(fds_member(fds_union(a, na), x, f));
        }
        EXPECT_EQ(fds_text(parse_condition(fds_text(a, f), f), f), fds_text(a, f));
    }
}

TEST(FiniteSets, CylinderSetsMatchCylinderMembership) {
    Presentation otw = Presentation::load(data_path("otw.shift"));
    const BlurFamily& f = otw.family;
    BlurId a = f.resolve("A");
    std::vector<Cylinder> zs = {Cylinder::plain({s(0, 1)}), Cylinder::plain({s(0, 1), s(0, 2)}), Cylinder::blurred({}, a),
                                Cylinder::blurred({s(0, 0)}, a, {s(0, 1), s(0, 3)}), Cylinder::plain({})};
    for (const auto& z : zs) {
        FiniteSet fs = cylinder_set(z, f);
        for (const auto& x : otw_probes(f)) EXPECT_EQ(fds_member(fs, x, f), cylinder_member(z, x, f)) << cylinder_text(z, f);
    }
}

TEST(FiniteSets, PseudoCylinderAtAnOffset) {
    Presentation otw = Presentation::load(data_path("otw.shift"));
    const BlurFamily& f = otw.family;
    FiniteSet pc = pseudo_cylinder(1, {Glyph::of(s(0, 2)), Glyph::of(f.resolve("A"))});
    for (const auto& x : otw_probes(f))
        EXPECT_EQ(fds_member(pc, x, f), x.at(1) == Glyph::of(s(0, 2)) && x.at(2) == Glyph::of(f.resolve("A")));
}

TEST(CodeFiles, ParseErrors) {
    std::string base = data_path("codes");
    try {
        Code::parse("code c : ../otw.shift -> ../otw.shift\nwhen x0 = 0.0 emit 0.1\n", base);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "MissingDefault");
    }
    EXPECT_THROW(Code::parse("code c : ../otw.shift -> ../otw.shift\ndefault emit 0.0\nwhen x0 = 0.0 emit 0.1\n", base), Error);
    EXPECT_THROW(Code::parse("default emit 0.0\n", base), Error);
}

TEST(ApplyCode, IdentityIsIdentity) {
    Code c = load_code("identity");
    Sampler smp(c.domain, 4);
    for (int k = 0; k < 40; ++k) {
        Point x = smp.random_point();
        CodeOutput o = apply_code(c, x, 10);
        ASSERT_TRUE(o.point);
        EXPECT_EQ(*o.point, x);
    }
}

TEST(ApplyCode, ProjectionByHand) {
    Code c = load_code("project");
    const BlurFamily& df = c.domain.family;
    const BlurFamily& cf = c.codomain.family;
    // (t, i) -> (0, code(t, i)); code(0,1)=2, code(1,2)=8, code(2,0)=3, code(1,0)=1.
    std::vector<std::pair<std::string, std::string>> cases = {
        {"0.1 1.2 | ~H2", "0.2 0.8 | ~A"},
        {"| ~H0", "| ~A"},
        {"0.1 | ~H1", "0.2 | ~A"},
        {"(0.1 1.2 2.0)*", "(0.2 0.8 0.3)*"},
        {"0.0 (1.0 2.0 0.0)*", "(0.0 0.1 0.3)*"},
    };
    for (const auto& [in, want] : cases) {
        CodeOutput o = apply_code(c, parse_point(in, df), 10);
        ASSERT_TRUE(o.point) << in;
        EXPECT_EQ(point_text(*o.point, cf), point_text(parse_point(want, cf), cf)) << in;
    }
}

TEST(ApplyCode, DomainAndCodomainErrors) {
    Code c = load_code("identity");
    try {
        apply_code(c, parse_point("0.1 2.0 | ~H0", c.domain.family), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), "PointNotInDomain");
    }
}

TEST(Commute, IdentityAndProjectionPass) {
    for (std::string name : {"identity", "project"}) {
        Code c = load_code(name);
        Sampler smp(c.domain, 17);
        std::vector<Point> xs;
        for (int k = 0; k < 100; ++k) xs.push_back(smp.random_point());
        EXPECT_TRUE(commute_check(c, xs, 20).ok) << name;
        std::vector<Point> per;
        for (int k = 0; k < 50; ++k) per.push_back(smp.random_periodic());
        EXPECT_TRUE(period_check(c, per).ok) << name;
    }
}

TEST(Commute, BrokenCodeFailsWithWitness) {
    Code c = load_code("broken");
    Sampler smp(c.domain, 17);
    std::vector<Point> xs;
    for (int k = 0; k < 100; ++k) xs.push_back(smp.random_point());
    CheckResult r = commute_check(c, xs, 20);
    EXPECT_FALSE(r.ok);
    EXPECT_FALSE(r.witness.empty());
}

TEST(LengthPreserving, Verdicts) {
    EXPECT_EQ(length_preserving_check(load_code("identity")).verdict, Tri::Holds);
    EXPECT_EQ(length_preserving_check(load_code("project")).verdict, Tri::Holds);
    for (std::string name : {"constblur", "symbolblur", "blursymbol", "broken"}) {
        LengthPreserving r = length_preserving_check(load_code(name));
        EXPECT_EQ(r.verdict, Tri::Fails) << name;
        EXPECT_FALSE(r.witness.empty()) << name;
    }
}

TEST(ContinuityConditions, GoldenTable) {
    EXPECT_EQ(table(load_code("identity")), "i=holds ii.a=holds ii.b=holds iii=holds ");
    EXPECT_EQ(table(load_code("project")), "i=holds ii.a=holds ii.b=holds iii=holds ");
    EXPECT_EQ(table(load_code("constblur")), "i=fails ii.a=holds ii.b=holds iii=fails ");
    EXPECT_EQ(table(load_code("blursymbol")), "i=fails ii.a=holds ii.b=holds iii=fails ");
    EXPECT_EQ(table(load_code("symbolblur")), "i=holds ii.a=holds ii.b=holds iii=holds ");
    EXPECT_EQ(table(load_code("broken")), "i=unknown ii.a=unknown ii.b=unknown iii=holds ");
    auto rep = chl_condition_report(load_code("project"));
    EXPECT_NE(rep[1].detail.find("F = ∅"), std::string::npos) << rep[1].detail;
    auto cb = chl_condition_report(load_code("constblur"));
    EXPECT_NE(cb[3].detail.find("M = 10"), std::string::npos) << cb[3].detail;
}
