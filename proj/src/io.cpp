#include "pentabend/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace pentabend {

std::string format_double(double x) {
    char buf[40];
    for (int prec = 1; prec <= 16; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) return buf;
    }
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

Json json_document() {
    Json j;
    j["schema"] = 1;
    return j;
}

namespace {

Json complex_to_json(const std::complex<double>& z) {
    return Json::array({z.real(), z.imag()});
}

}  // namespace

Json to_json(const SingularityReport& rep) {
    Json j = json_document();
    j["rank"] = rep.rank;
    j["type"] = to_string(rep.type);
    j["t"] = rep.t;
    j["probe"] = Json::array({rep.probe[0], rep.probe[1]});
    j["roots"] = Json::array({complex_to_json(rep.roots[0]), complex_to_json(rep.roots[1])});
    j["residuals"] = Json::object();
    for (const auto& [name, value] : rep.residuals) j["residuals"][name] = value;
    return j;
}

Json to_json(const QuadraticData& q) {
    Json j = json_document();
    j["t_minus"] = q.t_minus;
    j["t_plus"] = q.t_plus;
    j["a"] = q.f_coeffs[0];
    j["b"] = q.f_coeffs[1];
    j["c"] = q.f_coeffs[2];
    j["delta"] = q.delta;
    j["A_coeffs"] = Json::array({q.A_coeffs[0], q.A_coeffs[1], q.A_coeffs[2]});
    j["g_coeffs"] = Json::array({q.g_coeffs[0], q.g_coeffs[1], q.g_coeffs[2]});
    return j;
}

Json sweep_to_json(const std::vector<SweepRow>& rows) {
    Json j = json_document();
    Json arr = Json::array();
    for (const SweepRow& row : rows) {
        Json r;
        r["t"] = row.t;
        r["type"] = to_string(row.type);
        if (row.eigen_type)
            r["eigen_type"] = to_string(*row.eigen_type);
        else
            r["eigen_type"] = nullptr;
        r["A"] = row.A;
        r["B"] = row.B;
        r["disc"] = row.disc;
        r["root1"] = complex_to_json(row.root1);
        r["root2"] = complex_to_json(row.root2);
        arr.push_back(std::move(r));
    }
    j["rows"] = std::move(arr);
    return j;
}

Json vertices_to_json(const PredictedVertices& v) {
    Json j = json_document();
    auto list = [](const std::vector<Vec2>& vs) {
        Json arr = Json::array();
        for (const Vec2& p : vs) arr.push_back(Json::array({p.x(), p.y()}));
        return arr;
    };
    j["vertices_34"] = list(v.vertices_34);
    j["vertices_45"] = list(v.vertices_45);
    return j;
}

Json configuration_to_json(const Configuration& c) {
    Json arr = Json::array();
    for (const Vec3& rho : c.rho)
        arr.push_back(Json::array({rho.x(), rho.y(), rho.z()}));
    return arr;
}

Configuration configuration_from_json(const Json& j) {
    if (!j.is_array() || j.size() < 4)
        throw ContractViolation("configuration: need an array of >= 4 edge vectors");
    Configuration c;
    for (const Json& row : j) {
        if (!row.is_array() || row.size() != 3)
            throw ContractViolation("configuration: each edge must be [x, y, z]");
        c.rho.emplace_back(row[0].get<double>(), row[1].get<double>(),
                           row[2].get<double>());
    }
    return c;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream os;
    os << "# pentabend sweep v1\n";
    os << "t,type,A,B,disc,root1_re,root1_im,root2_re,root2_im\n";
    for (const SweepRow& row : rows) {
        os << format_double(row.t) << ',' << to_string(row.type) << ','
           << format_double(row.A) << ',' << format_double(row.B) << ','
           << format_double(row.disc) << ',' << format_double(row.root1.real())
           << ',' << format_double(row.root1.imag()) << ','
           << format_double(row.root2.real()) << ','
           << format_double(row.root2.imag()) << '\n';
    }
    return os.str();
}

std::string moment_samples_to_csv(const std::vector<MomentSample>& samples) {
    std::ostringstream os;
    os << "# pentabend moment-image v1\n";
    os << "J,H,ell34,ell45\n";
    for (const MomentSample& s : samples) {
        os << format_double(s.J) << ',' << format_double(s.H) << ','
           << format_double(s.ell34) << ',' << format_double(s.ell45) << '\n';
    }
    return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ContractViolation("cannot open for writing: " + path);
    out << text;
    if (!out.good()) throw ContractViolation("write failed: " + path);
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ContractViolation("cannot open: " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ContractViolation("JSON parse error in " + path + ": " + e.what());
    }
}

}  // namespace pentabend
