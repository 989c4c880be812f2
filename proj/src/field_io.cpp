#include "youngwave/field_io.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <memory>
#include <sstream>

#include "youngwave/errors.hpp"

namespace youngwave {

namespace fs = std::filesystem;

std::string sidecar_path(const std::string& csvPath) {
    fs::path p(csvPath);
    p.replace_extension(".json");
    return p.string();
}

void write_json(const std::string& path, const nlohmann::json& j) {
    std::ofstream os(path);
    if (!os) throw Error("cannot write " + path);
    os << j.dump(2) << '\n';
}

void write_field_csv(const std::string& path, const GridField& f, const nlohmann::json& meta) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw Error("cannot write " + path);
    std::unique_ptr<std::FILE, int (*)(std::FILE*)> guard(fp, std::fclose);
    std::fputs("s,t,value\n", fp);
    for (int i = 0; i <= f.ns(); ++i)
        for (int j = 0; j <= f.nt(); ++j) std::fprintf(fp, "%.17g,%.17g,%.17g\n", f.s(i), f.t(j), f(i, j));
    if (std::ferror(fp)) throw Error("write failed for " + path);

    nlohmann::json side = meta;
    const Rectangle& d = f.domain();
    side["domain"] = {d.s1(), d.s2(), d.t1(), d.t2()};
    side["ns"] = f.ns();
    side["nt"] = f.nt();
    write_json(sidecar_path(path), side);
}

nlohmann::json read_sidecar(const std::string& csvPath) {
    std::ifstream is(sidecar_path(csvPath));
    if (!is) throw ParameterError("missing sidecar " + sidecar_path(csvPath));
    try {
        return nlohmann::json::parse(is);
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError("malformed sidecar " + sidecar_path(csvPath) + ": " + e.what());
    }
}

GridField read_field_csv(const std::string& path) {
    const nlohmann::json side = read_sidecar(path);
    Rectangle dom(0, 1, 0, 1);
    int ns = 0, nt = 0;
    try {
        const auto& d = side.at("domain");
        dom = Rectangle(d.at(0).get<double>(), d.at(1).get<double>(), d.at(2).get<double>(), d.at(3).get<double>());
        ns = side.at("ns").get<int>();
        nt = side.at("nt").get<int>();
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("incomplete sidecar: ") + e.what());
    }
    if (ns < 1 || nt < 1) throw ParameterError("sidecar grid sizes must be positive");

    std::ifstream is(path);
    if (!is) throw ParameterError("cannot read " + path);
    std::string line;
    std::getline(is, line);
    if (line != "s,t,value") throw ParameterError("unexpected CSV header in " + path);
    GridField probe = GridField::zeros(dom, ns, nt);
    std::vector<double> v;
    v.reserve(static_cast<std::size_t>(ns + 1) * (nt + 1));
    for (int i = 0; i <= ns; ++i)
        for (int j = 0; j <= nt; ++j) {
            if (!std::getline(is, line)) throw ParameterError("CSV ends early in " + path);
            double s, t, val;
            char c1, c2;
            std::istringstream ls(line);
            if (!(ls >> s >> c1 >> t >> c2 >> val) || c1 != ',' || c2 != ',')
                throw ParameterError("malformed CSV row in " + path);
            const double tol = 1e-9 * std::max(probe.ds(), probe.dt());
            if (std::abs(s - probe.s(i)) > tol || std::abs(t - probe.t(j)) > tol)
                throw AlignmentError("CSV node coordinates disagree with the sidecar grid");
            v.push_back(val);
        }
    return GridField(dom, ns, nt, std::move(v));
}

std::string sha256_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot read " + path);
    std::unique_ptr<EVP_MD_CTX, void (*)(EVP_MD_CTX*)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 15];
    while (is.read(buf, sizeof buf) || is.gcount() > 0) EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(is.gcount()));
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), md, &len);
    std::ostringstream os;
    for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
    return os.str();
}

}  // namespace youngwave
