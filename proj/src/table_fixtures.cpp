#include "cuejm/table_fixtures.hpp"

#include <initializer_list>
#include <utility>

namespace cuejm {

namespace {

// The reference values are recorded in the factored form they were published
// in, expanded once at startup; literal strings only, nothing computed by the
// code under test.
Rational factored(std::initializer_list<long> num_factors,
                  std::initializer_list<std::pair<long, int>> den_factors) {
    Integer num(1);
    for (long f : num_factors) num *= Integer(f);
    Integer den(1);
    for (auto [p, e] : den_factors) den *= boost::multiprecision::pow(Integer(p), static_cast<unsigned>(e));
    return make_rational(num, den);
}

std::vector<TablePreset> build_presets() {
    std::vector<TablePreset> presets;

    TablePreset bkk;
    bkk.name = "bkk20";
    bkk.description = "second-derivative Z moments b(k,k,2,0), k = 1..6";
    bkk.entries = {
        {Family::b, {1, 1, 2, 0}, factored({1}, {{2, 4}, {5, 1}})},
        {Family::b, {2, 2, 2, 0}, factored({17}, {{2, 10}, {3, 3}, {5, 1}, {7, 1}, {11, 1}})},
        {Family::b, {3, 3, 2, 0},
         factored({11593}, {{2, 18}, {3, 7}, {5, 2}, {7, 3}, {11, 1}, {13, 1}, {17, 1}})},
        {Family::b, {4, 4, 2, 0},
         factored({103, 413129},
                  {{2, 28}, {3, 12}, {5, 5}, {7, 3}, {11, 2}, {13, 2}, {17, 1}, {19, 1}, {23, 1}})},
        {Family::b, {5, 5, 2, 0},
         factored({2616269, 322433}, {{2, 40}, {3, 17}, {5, 8}, {7, 5}, {11, 4}, {13, 3},
                                      {17, 2}, {19, 1}, {23, 1}, {29, 1}})},
        {Family::b, {6, 6, 2, 0},
         factored({53, 5830411, 94098709}, {{2, 54}, {3, 24}, {5, 13}, {7, 8}, {11, 4}, {13, 4},
                                            {17, 3}, {19, 2}, {23, 1}, {29, 1}, {31, 1}})},
    };
    presets.push_back(std::move(bkk));

    TablePreset a21;
    a21.name = "a21";
    a21.description = "characteristic-polynomial joint moments a(2,1,n1,n2), n2 <= n1 <= 3";
    a21.entries = {
        {Family::a, {2, 1, 0, 0}, parse_rational("1/12")},
        {Family::a, {2, 1, 1, 0}, parse_rational("1/45")},
        {Family::a, {2, 1, 1, 1}, parse_rational("61/10080")},
        {Family::a, {2, 1, 2, 0}, parse_rational("1/112")},
        {Family::a, {2, 1, 2, 1}, parse_rational("1133/453600")},
        {Family::a, {2, 1, 2, 2}, parse_rational("449/415800")},
        {Family::a, {2, 1, 3, 0}, parse_rational("1/225")},
        {Family::a, {2, 1, 3, 1}, parse_rational("529/415800")},
        {Family::a, {2, 1, 3, 2}, parse_rational("3943/6879600")},
        {Family::a, {2, 1, 3, 3}, parse_rational("48953/155232000")},
    };
    presets.push_back(std::move(a21));

    TablePreset b21;
    b21.name = "b21";
    b21.description = "Z-analogue joint moments b(2,1,n1,n2), n2 <= n1 <= 3";
    b21.entries = {
        {Family::b, {2, 1, 0, 0}, parse_rational("1/12")},
        {Family::b, {2, 1, 1, 0}, parse_rational("1/720")},
        {Family::b, {2, 1, 1, 1}, parse_rational("1/6720")},
        {Family::b, {2, 1, 2, 0}, parse_rational("1/4032")},
        {Family::b, {2, 1, 2, 1}, parse_rational("19/3628800")},
        {Family::b, {2, 1, 2, 2}, parse_rational("17/10644480")},
        {Family::b, {2, 1, 3, 0}, parse_rational("1/57600")},
        {Family::b, {2, 1, 3, 1}, parse_rational("19/10644480")},
        {Family::b, {2, 1, 3, 2}, parse_rational("127/1761177600")},
        {Family::b, {2, 1, 3, 3}, parse_rational("41/1419264000")},
    };
    presets.push_back(std::move(b21));

    return presets;
}

} // namespace

const std::vector<TablePreset>& table_presets() {
    static const std::vector<TablePreset> presets = build_presets();
    return presets;
}

const TablePreset* find_preset(std::string_view name) {
    for (const auto& p : table_presets()) {
        if (p.name == name) return &p;
    }
    return nullptr;
}

} // namespace cuejm
