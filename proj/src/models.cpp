#include "exc/models.hpp"

#include <fstream>

namespace exc {

namespace {

// rows k >= 1 shared by all built-ins: v_k = prod_{l>=k} u_l^C(l,k)
void fill_binomial_rows(MonomialQShift* s, int M) {
    for (int k = 1; k <= M; ++k)
        for (int l = k; l <= M; ++l)
            s->rows[k][l] = static_cast<int>(binomial(static_cast<unsigned long>(l),
                                                      static_cast<unsigned long>(k)).get_si());
}

MonomialQShift dyck_shift(int M) {
    MonomialQShift s;
    s.rows.assign(M + 1, std::vector<int>(M + 1, 0));
    s.rows[0][0] = 1;
    for (int l = 1; l <= M; ++l) s.rows[0][l] = 2;
    fill_binomial_rows(&s, M);
    return s;
}

MonomialQShift tree_shift(int M) {
    MonomialQShift s;
    s.rows.assign(M + 1, std::vector<int>(M + 1, 0));
    for (int l = 0; l <= M; ++l) s.rows[0][l] = 1;
    fill_binomial_rows(&s, M);
    return s;
}

std::vector<int> pexp(int M, int N, int u0, std::vector<int> uplus, std::vector<int> y) {
    std::vector<int> e(1 + M + N, 0);
    e[0] = u0;
    for (int i = 0; i < M; ++i) e[1 + i] = uplus[i];
    for (int j = 0; j < N; ++j) e[1 + M + j] = y[j];
    return e;
}

}  // namespace

bool is_builtin_model(const std::string& name) {
    return name == "dyck" || name == "motzkin" || name == "binary";
}

Model builtin_model(const std::string& name, int M) {
    if (M < 1) throw error("builtin models need M >= 1");
    Model m;
    m.name = name;
    if (name == "dyck") {
        // E(u) = u_0 u_1...u_M (E(u)+1)(E(v(u))+1), v the height-shift
        m.description = "Dyck paths by half-length and k-th moments of height";
        m.eq.M = M;
        m.eq.N = 2;
        m.eq.P = SparsePoly<Rational>(1 + M + 2);
        std::vector<int> ones(M, 1);
        for (std::vector<int> y : {std::vector<int>{0, 0}, {1, 0}, {0, 1}, {1, 1}})
            m.eq.P.add_term(pexp(M, 2, 1, ones, y), Rational(1));
        m.eq.shifts = {MonomialQShift::identity(M), dyck_shift(M)};
        return m;
    }
    if (name == "motzkin") {
        // T(u) = u_0 (1 + T(v(u)) + T(v(u))^2), v the depth-shift
        m.description = "Motzkin trees by vertices and k-th depth-power sums";
        m.eq.M = M;
        m.eq.N = 1;
        m.eq.P = SparsePoly<Rational>(1 + M + 1);
        std::vector<int> zeros(M, 0);
        for (int d : {0, 1, 2}) m.eq.P.add_term(pexp(M, 1, 1, zeros, {d}), Rational(1));
        m.eq.shifts = {tree_shift(M)};
        return m;
    }
    if (name == "binary") {
        // T(u) = u_0 (1 + T(v(u))^2); counting sequence lives on odd sizes
        m.description = "binary trees by vertices and k-th depth-power sums (periodic)";
        m.eq.M = M;
        m.eq.N = 1;
        m.eq.P = SparsePoly<Rational>(1 + M + 1);
        std::vector<int> zeros(M, 0);
        for (int d : {0, 2}) m.eq.P.add_term(pexp(M, 1, 1, zeros, {d}), Rational(1));
        m.eq.shifts = {tree_shift(M)};
        return m;
    }
    throw error("unknown builtin model: " + name);
}

Model parse_model_json(const nlohmann::json& j) {
    Model m;
    if (!j.is_object()) throw error("model file must be a JSON object");
    m.eq.M = j.at("M").get<int>();
    m.eq.N = j.at("N").get<int>();
    if (m.eq.M < 1 || m.eq.N < 1) throw error("model needs M >= 1 and N >= 1");
    m.eq.P = SparsePoly<Rational>(1 + m.eq.M + m.eq.N);
    if (j.contains("name")) m.name = j.at("name").get<std::string>();
    if (j.contains("description")) m.description = j.at("description").get<std::string>();
    for (const auto& t : j.at("P")) {
        std::vector<int> ue = t.at("u_exponents").get<std::vector<int>>();
        std::vector<int> ye = t.at("y_exponents").get<std::vector<int>>();
        if (static_cast<int>(ue.size()) != 1 + m.eq.M)
            throw error("u_exponents must have length 1 + M");
        if (static_cast<int>(ye.size()) != m.eq.N)
            throw error("y_exponents must have length N");
        Rational c = parse_rational(t.at("coeff").get<std::string>());
        std::vector<int> e = ue;
        e.insert(e.end(), ye.begin(), ye.end());
        m.eq.P.add_term(e, c);
    }
    for (const auto& s : j.at("shifts")) {
        MonomialQShift shift;
        shift.rows = s.get<std::vector<std::vector<int>>>();
        m.eq.shifts.push_back(std::move(shift));
    }
    return m;
}

nlohmann::json model_to_json(const Model& m) {
    nlohmann::json j;
    j["M"] = m.eq.M;
    j["N"] = m.eq.N;
    if (!m.name.empty()) j["name"] = m.name;
    if (!m.description.empty()) j["description"] = m.description;
    j["P"] = nlohmann::json::array();
    for (const auto& [e, c] : m.eq.P.terms()) {
        nlohmann::json t;
        t["u_exponents"] = std::vector<int>(e.begin(), e.begin() + 1 + m.eq.M);
        t["y_exponents"] = std::vector<int>(e.begin() + 1 + m.eq.M, e.end());
        t["coeff"] = to_string(c);
        j["P"].push_back(t);
    }
    j["shifts"] = nlohmann::json::array();
    for (const auto& s : m.eq.shifts) j["shifts"].push_back(s.rows);
    return j;
}

Model load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw error("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw error("model file is not valid JSON: " + std::string(e.what()));
    }
    try {
        return parse_model_json(j);
    } catch (const nlohmann::json::exception& e) {
        throw error("model file is malformed: " + std::string(e.what()));
    }
}

}  // namespace exc
