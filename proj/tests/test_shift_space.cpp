#include <gtest/gtest.h>

#include "blurshift/metric.hpp"
#include "blurshift/sampling.hpp"
#include "blurshift/shift.hpp"
#include "oracles.hpp"

using namespace blurshift;
using oracle::data_path;

namespace {

Symbol s(uint64_t c, uint64_t i) { return Symbol{c, i}; }

std::string first_error(const std::string& file) {
    auto r = validate_presentation(Presentation::load(data_path(file)));
    return r.errors.empty() ? "" : r.errors[0].code;
}

}  // namespace

TEST(Validation, ShippedFiles) {
    for (std::string f : {"rp1.shift", "otw.shift", "ex22.shift", "n2.shift", "flambda.shift", "period2.shift",
                          "tail_follower.shift"})
        EXPECT_TRUE(validate_presentation(Presentation::load(data_path(f))).ok()) << f;
    EXPECT_EQ(first_error("sink.shift"), "SinkRule");
    EXPECT_EQ(first_error("uncovered.shift"), "UncoveredLetter");
    EXPECT_EQ(first_error("overlap.shift"), "InfiniteOverlap");
}

TEST(Validation, OrphanLettersWarn) {
    Presentation p = Presentation::parse("alphabet = columns 4\nblur A = col 0\nletters = col 0 + col 3\nrule default -> col 0\n");
    auto r = validate_presentation(p);
    EXPECT_TRUE(r.ok());
    ASSERT_FALSE(r.warnings.empty());
    EXPECT_EQ(r.warnings[0].code, "OrphanLetters");
}

TEST(Validation, TextRoundTrip) {
    for (std::string f : {"rp1.shift", "ex22.shift", "n2.shift", "flambda.shift"}) {
        Presentation p = Presentation::load(data_path(f));
        EXPECT_EQ(Presentation::parse(p.text()).text(), p.text()) << f;
    }
}

TEST(Language, Rp1Examples) {
    Presentation p = Presentation::load(data_path("rp1.shift"));
    EXPECT_TRUE(in_language(p, {s(0, 5), s(1, 7), s(2, 0)}));
    EXPECT_FALSE(in_language(p, {s(0, 5), s(2, 7)}));
    EXPECT_TRUE(in_language(p, {}));
    EXPECT_EQ(follower_of_word(p, {}).text(), "col 0 + col 1 + col 2");
    EXPECT_EQ(follower_of_word(p, {s(0, 5)}).text(), "col 1");
}

TEST(Language, AgreesWithOracleOnWords) {
    for (std::string f : {"rp1.shift", "n2.shift", "flambda.shift", "period2.shift"}) {
        Presentation p = Presentation::load(data_path(f));
        std::vector<Symbol> syms;
        for (uint64_t c = 0; c < 4; ++c)
            for (uint64_t i = 0; i < 4; ++i)
                if (p.family.alphabet.has(c)) syms.push_back(s(c, i));
        for (const auto& a : syms)
            for (const auto& b : syms)
                for (const auto& c : syms) {
                    Word w{a, b, c};
                    EXPECT_EQ(in_language(p, w), oracle::word_in_language(p, w)) << f << " " << to_string(w);
                }
    }
}

TEST(Language, N2FollowerIsAColumnTail) {
    Presentation p = Presentation::load(data_path("n2.shift"));
    SymbolSet fw = follower_of_word(p, {s(0, 3)});
    for (uint64_t i = 0; i < 20; ++i) EXPECT_EQ(member(s(0, i), fw, p.family), i >= 3);
    EXPECT_FALSE(member(s(1, 5), fw, p.family));
}

TEST(InfiniteExtension, Examples) {
    Presentation p = Presentation::load(data_path("rp1.shift"));
    BlurId h1 = p.family.resolve("H1"), h2 = p.family.resolve("H2");
    Membership m = sigma_member(p, Point::blur_tail({s(0, 5)}, h1));
    EXPECT_TRUE(m.member);
    EXPECT_EQ(m.stratum, std::optional<size_t>(1));
    EXPECT_FALSE(sigma_member(p, Point::blur_tail({s(0, 5)}, h2)).member);
    Membership z = sigma_member(p, Point::blur_tail({}, h1));
    EXPECT_TRUE(z.member);
    EXPECT_EQ(z.stratum, std::optional<size_t>(0));
    Membership per = sigma_member(p, Point::periodic({}, {s(0, 1), s(1, 1), s(2, 1)}));
    EXPECT_TRUE(per.member);
    EXPECT_FALSE(per.stratum.has_value());
    EXPECT_FALSE(sigma_member(p, Point::periodic({}, {s(0, 1), s(1, 1)})).member);
}

TEST(InfiniteExtension, AgreesWithEnumerationOracle) {
    for (std::string f : {"rp1.shift", "otw.shift", "n2.shift", "flambda.shift", "ex22.shift", "period2.shift"}) {
        Presentation p = Presentation::load(data_path(f));
        std::vector<BlurId> blurs = p.family.named_ids();
        if (p.family.param)
            for (uint64_t t = p.family.param->t0; t < p.family.param->t0 + 4; ++t) blurs.push_back(BlurId{-1, t});
        std::vector<Word> heads = {{}};
        for (uint64_t c = 0; c < 3; ++c)
            for (uint64_t i = 0; i < 4; ++i)
                if (p.family.alphabet.has(c)) heads.push_back({s(c, i)});
        for (const auto& h : heads)
            for (auto b : blurs) {
                bool got = sigma_member(p, Point::blur_tail(h, b)).member;
                EXPECT_EQ(got, oracle::infinite_extension(p, h, b)) << f << " " << to_string(h) << " " << p.family.label(b);
            }
    }
}

TEST(Strata, ShiftLowersTheStratum) {
    for (std::string f : {"rp1.shift", "otw.shift", "n2.shift", "flambda.shift"}) {
        Presentation p = Presentation::load(data_path(f));
        Sampler smp(p, 21, 4);
        for (int k = 0; k < 60; ++k) {
            Point x = smp.random_point();
            Membership m = sigma_member(p, x);
            ASSERT_TRUE(m.member) << f << " " << point_text(x, p.family);
            Membership n = sigma_member(p, shift_apply(x));
            ASSERT_TRUE(n.member);
            if (!m.stratum) {
                EXPECT_FALSE(n.stratum.has_value());
            } else {
                EXPECT_EQ(*n.stratum, *m.stratum == 0 ? 0 : *m.stratum - 1);
            }
        }
    }
}

TEST(Strata, PeriodTwoImageOfTheShift) {
    // With one-step rules the shifted shift has the same blur points, so the
    // image of every preimage candidate is checked instead.
    Presentation p = Presentation::load(data_path("period2.shift"));
    BlurId a0 = p.family.resolve("A0"), a1 = p.family.resolve("A1");
    for (uint64_t i = 0; i < 5; ++i) {
        Point x = Point::blur_tail({s(0, i)}, a1);
        EXPECT_TRUE(sigma_member(p, x).member);
        for (uint64_t j = 0; j < 5; ++j) {
            Point pre = Point::blur_tail({s(1, j), s(0, i)}, a1);
            EXPECT_TRUE(sigma_member(p, pre).member);
            EXPECT_EQ(shift_apply(pre), x);
        }
        EXPECT_FALSE(sigma_member(p, Point::blur_tail({s(0, i)}, a0)).member);
    }
}

TEST(Compactness, Verdicts) {
    EXPECT_TRUE(is_compact(Presentation::load(data_path("otw.shift"))).compact);
    Compactness rp1 = is_compact(Presentation::load(data_path("rp1.shift")));
    EXPECT_TRUE(rp1.compact);
    EXPECT_EQ(rp1.active.listed.size(), 3u);
    EXPECT_TRUE(rp1.residual.finite && rp1.residual.symbols.empty());
    Compactness ex = is_compact(Presentation::load(data_path("ex22.shift")));
    EXPECT_FALSE(ex.compact);
    EXPECT_TRUE(ex.active.infinite());
    EXPECT_FALSE(is_compact(Presentation::load(data_path("flambda.shift"))).compact);
}

TEST(Compactness, RP1CoverageByEnumeration) {
    Presentation p = Presentation::load(data_path("rp1.shift"));
    for (uint64_t c = 0; c < 1000; ++c) {
        Symbol x = symbol_from_code(c);
        if (!p.is_letter(x)) continue;
        bool covered = false;
        for (auto id : p.family.named_ids()) covered |= p.family.contains(id, x);
        EXPECT_TRUE(covered) << to_string(x);
    }
}

TEST(Compactness, Witnesses) {
    Presentation ex = Presentation::load(data_path("ex22.shift"));
    auto w = non_compactness_witness(ex);
    ASSERT_TRUE(w);
    EXPECT_EQ(w->kind, WitnessFamily::Kind::DistinctBlurs);
    auto xs = witness_members(ex, *w, 5);
    for (size_t l = 0; l < xs.size(); ++l) EXPECT_EQ(xs[l], Point::blur_tail({}, BlurId{-1, 1 + l}));

    Presentation bare = Presentation::parse("alphabet = columns 1\nletters = col 0\nrule default -> all\n");
    auto u = non_compactness_witness(bare);
    ASSERT_TRUE(u);
    EXPECT_EQ(u->kind, WitnessFamily::Kind::UncoveredLetters);
    auto ys = witness_members(bare, *u, 4);
    for (size_t l = 0; l < ys.size(); ++l) {
        EXPECT_EQ(ys[l].at(0), Glyph::of(s(0, l)));
        EXPECT_TRUE(sigma_member(bare, ys[l]).member);
    }
    EXPECT_FALSE(non_compactness_witness(Presentation::load(data_path("rp1.shift"))));
}

TEST(LocalCompactness, Verdicts) {
    using V = LocalCompactness::Verdict;
    EXPECT_EQ(is_locally_compact(Presentation::load(data_path("rp1.shift"))).verdict, V::YesCovered);
    EXPECT_EQ(is_locally_compact(Presentation::load(data_path("flambda.shift"))).verdict, V::YesCovered);
    Presentation bare = Presentation::parse("alphabet = columns 1\nletters = all\nrule default -> all\n");
    EXPECT_EQ(is_locally_compact(bare).verdict, V::Unknown);
    EXPECT_FALSE(is_compact(bare).compact);
}

TEST(Countability, Reports) {
    auto r = countability_metrizability_report(Presentation::load(data_path("rp1.shift")));
    EXPECT_TRUE(r.separable && r.first_countable && r.second_countable && r.metrizable && r.compact);
    auto e = countability_metrizability_report(Presentation::load(data_path("ex22.shift")));
    EXPECT_TRUE(e.separable && e.first_countable && e.second_countable && e.metrizable);
    EXPECT_FALSE(e.compact);
}

TEST(ShiftContinuity, Verdicts) {
    using V = BlurContinuity::Verdict;
    Presentation n2 = Presentation::load(data_path("n2.shift"));
    auto rep = shift_continuity_report(n2);
    ASSERT_FALSE(rep.at_blurs.empty());
    for (const auto& b : rep.at_blurs) EXPECT_EQ(b.verdict, V::Yes) << b.blur;
    for (uint64_t t = 0; t < 6; ++t) EXPECT_EQ(shift_continuity_at(n2, BlurId{-1, t}).verdict, V::Yes);

    Presentation otw = Presentation::load(data_path("otw.shift"));
    EXPECT_EQ(shift_continuity_at(otw, otw.family.resolve("A")).verdict, V::No);

    Presentation rp1 = Presentation::load(data_path("rp1.shift"));
    EXPECT_EQ(shift_continuity_at(rp1, rp1.family.resolve("H1")).verdict, V::No);
    // Followers of the first 50 symbols of H1 never meet H1.
    BlurId h1 = rp1.family.resolve("H1");
    for (const auto& x : enumerate(blur_symbols(h1, rp1.family), 50, rp1.family))
        EXPECT_TRUE(enumerate(rp1.follower(x), 1, rp1.family).front().col == 2);
}
