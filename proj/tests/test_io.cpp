#include <doctest.h>

#include "exc/models.hpp"
#include "exc/output.hpp"

using namespace exc;

TEST_CASE("model JSON round trip is exact") {
    for (const char* name : {"dyck", "motzkin", "binary"}) {
        Model m = builtin_model(name, 2);
        Model back = parse_model_json(model_to_json(m));
        CHECK(back.eq.M == m.eq.M);
        CHECK(back.eq.N == m.eq.N);
        CHECK(back.eq.P == m.eq.P);
        REQUIRE(back.eq.shifts.size() == m.eq.shifts.size());
        for (std::size_t j = 0; j < m.eq.shifts.size(); ++j)
            CHECK(back.eq.shifts[j].rows == m.eq.shifts[j].rows);
        CHECK(back.name == m.name);
    }
}

TEST_CASE("model JSON rejects malformed input") {
    nlohmann::json j = model_to_json(builtin_model("dyck", 1));
    nlohmann::json bad = j;
    bad["P"][0]["coeff"] = "1/0";
    CHECK_THROWS_AS(parse_model_json(bad), error);
    bad = j;
    bad["P"][0]["u_exponents"] = std::vector<int>{1};
    CHECK_THROWS_AS(parse_model_json(bad), error);
    bad = j;
    bad.erase("M");
    CHECK_THROWS(parse_model_json(bad));
    CHECK_THROWS_AS(load_model_file("/nonexistent/model.json"), error);
}

TEST_CASE("output values serialize losslessly") {
    // twopi form
    OutputValue a = OutputValue::from_surd(SurdScalar::twopi_power(Rational(15, 128), 1));
    OutputValue a2 = OutputValue::from_json(a.to_json());
    CHECK(a2.exact);
    CHECK(a2.surd == a.surd);
    // general surd (sqrt(pi))
    OutputValue b = OutputValue::from_surd(SurdScalar::make(Rational(1), 0, 1));
    auto jb = b.to_json();
    CHECK(!jb.contains("twopi_half_power"));
    OutputValue b2 = OutputValue::from_json(jb);
    CHECK(b2.surd == b.surd);
    // plain rational
    OutputValue c = OutputValue::from_surd(SurdScalar(Rational(19, 60)));
    CHECK(c.to_json().at("twopi_half_power").get<int>() == 0);
    CHECK(OutputValue::from_json(c.to_json()).surd == c.surd);
    // float-only round trips through the shortest-round-trip rendering
    OutputValue d = OutputValue::from_double(1.7724538509055161);
    OutputValue d2 = OutputValue::from_json(d.to_json());
    CHECK(!d2.exact);
    CHECK(d2.floating == d.floating);
}

TEST_CASE("output records round trip and render deterministically") {
    OutputRecord rec;
    rec.kind = "demo";
    rec.context["M"] = "2";
    rec.entries.push_back({{0, 1}, "", OutputValue::from_surd(SurdScalar(Rational(1, 2)))});
    rec.entries.push_back({{}, "u_c", OutputValue::from_surd(SurdScalar(Rational(1, 4)))});
    rec.entries.push_back({{1}, "mean", OutputValue::from_double(0.625)});

    OutputRecord back = OutputRecord::from_json(rec.to_json());
    CHECK(back.kind == rec.kind);
    CHECK(back.context == rec.context);
    REQUIRE(back.entries.size() == rec.entries.size());
    for (std::size_t i = 0; i < rec.entries.size(); ++i) {
        CHECK(back.entries[i].index == rec.entries[i].index);
        CHECK(back.entries[i].label == rec.entries[i].label);
        CHECK(back.entries[i].value.exact == rec.entries[i].value.exact);
        if (rec.entries[i].value.exact)
            CHECK(back.entries[i].value.surd == rec.entries[i].value.surd);
        else
            CHECK(back.entries[i].value.floating == rec.entries[i].value.floating);
    }

    for (Format f : {Format::Table, Format::Json, Format::Csv})
        CHECK(rec.render(f) == rec.render(f));
    CHECK(rec.render(Format::Json) == OutputRecord::from_json(rec.to_json()).render(Format::Json));
}

TEST_CASE("format names") {
    CHECK(parse_format("table") == Format::Table);
    CHECK(parse_format("json") == Format::Json);
    CHECK(parse_format("csv") == Format::Csv);
    CHECK_THROWS_AS(parse_format("yaml"), error);
}
