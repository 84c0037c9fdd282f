#include "topocon/errors.hpp"
#include "topocon/quasisaw.hpp"

#include "json.hpp"

#include <algorithm>

namespace topocon {

using nlohmann::json;

namespace {

std::vector<std::string> string_list(const json& j, const std::string& where)
{
    if (!j.is_array()) {
        throw Error(Errc::io, where + ": expected an array of ids");
    }
    std::vector<std::string> out;
    for (const auto& e : j) {
        if (!e.is_string()) {
            throw Error(Errc::io, where + ": ids must be strings");
        }
        out.push_back(e.get<std::string>());
    }
    return out;
}

} // namespace

QsModel model_from_json(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::io, std::string("model: ") + e.what());
    }
    if (!j.is_object() || !j.contains("w0")) {
        throw Error(Errc::io, "model: missing \"w0\"");
    }
    std::vector<QuasiSaw::Point1> w1;
    if (j.contains("w1")) {
        if (!j["w1"].is_array()) {
            throw Error(Errc::io, "model: \"w1\" must be an array");
        }
        for (const auto& z : j["w1"]) {
            if (!z.is_object() || !z.contains("id") || !z["id"].is_string() || !z.contains("succ")) {
                throw Error(Errc::io, "model: each w1 entry needs \"id\" and \"succ\"");
            }
            std::string id = z["id"].get<std::string>();
            w1.push_back({id, string_list(z["succ"], "model: succ of '" + id + "'")});
        }
    }
    QsModel m;
    m.frame = std::make_shared<const QuasiSaw>(string_list(j["w0"], "model: w0"), std::move(w1));
    if (j.contains("valuation")) {
        if (!j["valuation"].is_object()) {
            throw Error(Errc::io, "model: \"valuation\" must be an object");
        }
        for (const auto& [name, trace] : j["valuation"].items()) {
            if (!is_identifier(name)) {
                throw Error(Errc::io, "model: '" + name + "' is not a variable name");
            }
            auto ids = string_list(trace, "model: valuation of '" + name + "'");
            for (const auto& id : ids) {
                if (!m.frame->has0(id)) {
                    throw Error(Errc::invalid_argument,
                                "model: valuation of '" + name + "' names '" + id + "', not a depth-0 point");
                }
            }
            std::sort(ids.begin(), ids.end());
            if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
                throw Error(Errc::invalid_argument, "model: duplicate id in valuation of '" + name + "'");
            }
            m.valuation.emplace(name, rc_expand(m.frame, ids));
        }
    }
    return m;
}

std::string model_to_json(const QsModel& m)
{
    // ordered_json keeps the documented key order.
    nlohmann::ordered_json j;
    const QuasiSaw& f = *m.frame;
    j["w0"] = f.w0();
    j["w1"] = nlohmann::ordered_json::array();
    for (std::size_t z = 0; z < f.size1(); ++z) {
        std::vector<std::string> succ;
        for (std::size_t x = f.succ(z).find_first(); x != Bits::npos; x = f.succ(z).find_next(x)) {
            succ.push_back(f.w0()[x]);
        }
        j["w1"].push_back({{"id", f.w1()[z]}, {"succ", succ}});
    }
    j["valuation"] = nlohmann::ordered_json::object();
    for (const auto& [name, set] : m.valuation) {
        std::vector<std::string> ids;
        for (std::size_t x = set.trace().find_first(); x != Bits::npos; x = set.trace().find_next(x)) {
            ids.push_back(f.w0()[x]);
        }
        j["valuation"][name] = ids;
    }
    return j.dump();
}

} // namespace topocon
