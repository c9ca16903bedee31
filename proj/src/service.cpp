#include <cstdlib>
#include <string>

#include <httplib.h>

#include "slideanim/grammar.hpp"
#include "slideanim/synth.hpp"

namespace slideanim {

bool narrative_recovers_plan(const std::string& text, const AnimationPlan& plan) {
  const std::vector<ActionUnit> units = extract_action_units(text);
  if (units.size() != plan.steps.size()) return false;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const AnimationStep& step = plan.steps[i];
    const ActionUnit& unit = units[i];
    if (unit.category != step.category || unit.element != step.element ||
        unit.effect != step.effect) {
      return false;
    }
  }
  return true;
}

namespace {

struct ParsedUrl {
  std::string host_port;  // scheme://host:port
  std::string path;
};

bool parse_endpoint(const std::string& endpoint, ParsedUrl& out) {
  const std::string::size_type scheme = endpoint.find("://");
  if (scheme == std::string::npos) return false;
  const std::string::size_type path = endpoint.find('/', scheme + 3);
  if (path == std::string::npos) {
    out.host_port = endpoint;
    out.path = "/";
  } else {
    out.host_port = endpoint.substr(0, path);
    out.path = endpoint.substr(path);
  }
  return true;
}

}  // namespace

ServiceResult describe_via_service(const AnimationPlan& plan, const std::string& endpoint,
                                   double timeout_s) {
  ServiceResult result;
  result.narrative = render_narrative(plan);  // prepared fallback

  ParsedUrl url;
  if (!parse_endpoint(endpoint, url)) {
    result.note = "bad endpoint '" + endpoint + "'";
    return result;
  }

  httplib::Client client(url.host_port);
  const time_t seconds = static_cast<time_t>(timeout_s);
  const time_t micros = static_cast<time_t>((timeout_s - seconds) * 1e6);
  client.set_connection_timeout(seconds, micros);
  client.set_read_timeout(seconds, micros);
  client.set_write_timeout(seconds, micros);
  if (const char* token = std::getenv("SLIDEANIM_API_TOKEN")) {
    client.set_default_headers({{"Authorization", std::string("Bearer ") + token}});
  }

  httplib::Result response = client.Post(url.path, format_action_list(plan), "text/plain");
  if (!response) {
    result.note = "endpoint unreachable: " + httplib::to_string(response.error());
    return result;
  }
  if (response->status != 200) {
    result.note = "endpoint returned status " + std::to_string(response->status);
    return result;
  }
  if (!narrative_recovers_plan(response->body, plan)) {
    result.note = "response failed action-unit recovery";
    return result;
  }
  result.used_external = true;
  result.narrative = response->body;
  result.note.clear();
  return result;
}

}  // namespace slideanim
