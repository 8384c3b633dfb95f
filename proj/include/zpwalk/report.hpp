#ifndef ZPWALK_REPORT_HPP
#define ZPWALK_REPORT_HPP

#include <string>
#include <string_view>

#include "json.hpp"
#include "zpwalk/decision.hpp"
#include "zpwalk/dynamics.hpp"

namespace zpwalk {

using Json = nlohmann::json;

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string input_digest(std::string_view text);

Json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const Json& j);

Json certificate_to_json(const Certificate& c);
Certificate certificate_from_json(const Json& j);

/// The machine-readable result of one command.
struct Report {
    std::string command;
    std::string digest;
    std::string answer;
    std::string method;
    Json certificate;
    Json stats = Json::object();

    friend bool operator==(const Report&, const Report&) = default;
};

Json to_json(const Report& r);
Report report_from_json(const Json& j);

}  // namespace zpwalk

#endif  // ZPWALK_REPORT_HPP
