#include "tubedesign/design_io.hpp"

#include <fstream>
#include <sstream>

#include "tubedesign/errors.hpp"

namespace tubedesign {

namespace {

using nlohmann::json;

ExtendedReal atomFromJson(const json &x) {
    if (x.is_number()) return ExtendedReal(x.get<double>());
    if (x.is_string()) {
        std::string s = x.get<std::string>();
        if (s == "inf" || s == "-inf") return ExtendedReal::infinity();
        throw ValidationError("atom field \"x\" must be a number, \"inf\" or \"-inf\", got \"" + s + "\"");
    }
    throw ValidationError("atom field \"x\" must be a number or an infinity string");
}

MobiusParams mobiusFromJson(const json &v, const std::string &field) {
    if (!v.is_array() || v.size() != 4 || !v[0].is_number())
        throw ValidationError("field \"" + field + "\" must be an array [a,b,c,d] of four numbers");
    MobiusParams p{v[0].get<double>(), v[1].get<double>(), v[2].get<double>(), v[3].get<double>()};
    if (!p.valid()) throw ValidationError("field \"" + field + "\" is degenerate: ad - bc is zero");
    return p;
}

std::pair<int, int> lineColumn(const std::string &text, size_t byte) {
    int line = 1, col = 1;
    for (size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

} // namespace

std::pair<Model, Design> designFromJson(const json &j) {
    if (!j.is_object()) throw ValidationError("design document must be a JSON object");
    if (!j.contains("domain") || !j["domain"].is_string())
        throw ValidationError("missing string field \"domain\" (\"fourier\" or \"real\")");
    std::string domain = j["domain"].get<std::string>();
    if (domain != "fourier" && domain != "real")
        throw ValidationError("field \"domain\" must be \"fourier\" or \"real\", got \"" + domain + "\"");

    if (!j.contains("model") || !j["model"].is_object())
        throw ValidationError("missing object field \"model\"");
    const json &jm = j["model"];
    if (!jm.contains("kind") || !jm["kind"].is_string())
        throw ValidationError("model needs a string field \"kind\"");
    if (!jm.contains("n") || !jm["n"].is_number_integer())
        throw ValidationError("model needs an integer field \"n\"");
    int n = jm["n"].get<int>();
    if (n < 2) throw ValidationError("model field \"n\" must be at least 2");

    std::string kind = jm["kind"].get<std::string>();
    Model model;
    if (kind == "fourier") {
        model = Model::fourier(n);
        if (domain != "fourier") throw ValidationError("fourier models require \"domain\": \"fourier\"");
    } else if (kind == "weighted-polynomial") {
        if (!jm.contains("variance"))
            throw ValidationError("weighted-polynomial models need a field \"variance\": [a,b,c,d]");
        model = Model::weightedPolynomial(n, mobiusFromJson(jm["variance"], "variance"));
        if (domain != "real") throw ValidationError("weighted-polynomial models require \"domain\": \"real\"");
    } else {
        throw ValidationError("model kind must be \"fourier\" or \"weighted-polynomial\", got \"" + kind + "\"");
    }

    if (!j.contains("atoms") || !j["atoms"].is_array() || j["atoms"].empty())
        throw ValidationError("missing non-empty array field \"atoms\"");
    Design design;
    design.domain = (domain == "fourier") ? Domain::FourierCircle : Domain::RealLine;
    for (const auto &ja : j["atoms"]) {
        if (!ja.is_object() || !ja.contains("x") || !ja.contains("w"))
            throw ValidationError("each atom must be an object with fields \"x\" and \"w\"");
        if (!ja["w"].is_number()) throw ValidationError("atom field \"w\" must be a number");
        Atom a{atomFromJson(ja["x"]), ja["w"].get<double>()};
        if (!(a.w > 0.0)) throw ValidationError("atom field \"w\" must be positive");
        design.atoms.push_back(a);
    }
    design.validate();
    return {model, design};
}

json designToJson(const Model &model, const Design &design) {
    json jm;
    jm["n"] = model.n;
    if (model.kind == ModelKind::Fourier) {
        jm["kind"] = "fourier";
    } else {
        jm["kind"] = "weighted-polynomial";
        jm["variance"] = {model.variance.a, model.variance.b, model.variance.c, model.variance.d};
    }
    json atoms = json::array();
    for (const auto &a : design.atoms) {
        json ja;
        if (a.x.isInfinite())
            ja["x"] = "inf";
        else
            ja["x"] = a.x.value();
        ja["w"] = a.w;
        atoms.push_back(ja);
    }
    json j;
    j["domain"] = (design.domain == Domain::FourierCircle) ? "fourier" : "real";
    j["model"] = jm;
    j["atoms"] = atoms;
    return j;
}

std::pair<Model, Design> parseDesignFile(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open design file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        auto [line, col] = lineColumn(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ValidationError("malformed JSON in " + path + " at line " + std::to_string(line) +
                              ", column " + std::to_string(col) + ": " + e.what());
    }
    return designFromJson(j);
}

} // namespace tubedesign
