#include "zpwalk/report.hpp"

#include <cstdio>

#include "zpwalk/error.hpp"

namespace zpwalk {

std::string input_digest(std::string_view text) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Json schedule_to_json(const Schedule& s) {
    Json out = Json::array();
    for (const Move& m : s) out.push_back({m.vertex, m.edge});
    return out;
}

Schedule schedule_from_json(const Json& j) {
    Schedule s;
    try {
        for (const auto& m : j) s.push_back({m.at(0).get<Vertex>(), m.at(1).get<EdgeIndex>()});
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad schedule json: ") + e.what());
    }
    return s;
}

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

}  // namespace

Json certificate_to_json(const Certificate& c) {
    return std::visit(
        Overloaded{
            [](const ResidueVector& x) { return Json{{"kind", "solution"}, {"x", x}}; },
            [](const Schedule& s) { return Json{{"kind", "schedule"}, {"moves", schedule_to_json(s)}}; },
            [](const UnsolvabilityRank& r) {
                return Json{{"kind", "rank"}, {"rank", r.rank}, {"augmented_rank", r.augmented_rank}};
            },
            [](const OrbitExhausted& o) { return Json{{"kind", "orbit"}, {"size", o.orbit_size}}; },
            [](const NoPredecessor&) { return Json{{"kind", "no_predecessor"}}; },
        },
        c);
}

Certificate certificate_from_json(const Json& j) {
    try {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "solution") return j.at("x").get<ResidueVector>();
        if (kind == "schedule") return schedule_from_json(j.at("moves"));
        if (kind == "rank") {
            return UnsolvabilityRank{j.at("rank").get<std::size_t>(), j.at("augmented_rank").get<std::size_t>()};
        }
        if (kind == "orbit") return OrbitExhausted{j.at("size").get<std::size_t>()};
        if (kind == "no_predecessor") return NoPredecessor{};
        throw Error(ErrorCode::ParseError, "unknown certificate kind '" + kind + "'");
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad certificate json: ") + e.what());
    }
}

Json to_json(const Report& r) {
    return Json{{"command", r.command}, {"input_digest", r.digest}, {"answer", r.answer},
                {"method", r.method},   {"certificate", r.certificate}, {"stats", r.stats}};
}

Report report_from_json(const Json& j) {
    try {
        return Report{j.at("command").get<std::string>(), j.at("input_digest").get<std::string>(),
                      j.at("answer").get<std::string>(),  j.at("method").get<std::string>(),
                      j.at("certificate"),                 j.at("stats")};
    } catch (const Json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("bad report json: ") + e.what());
    }
}

}  // namespace zpwalk
