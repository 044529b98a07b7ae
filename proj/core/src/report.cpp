#include "lpverify/report.hpp"

#include <algorithm>
#include <utility>

namespace lpv {

std::string_view to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Vacuous: return "VACUOUS";
    case Status::NotApplicable: return "N/A";
  }
  return "?";
}

const IdentityEntry* IdentityReport::find(std::string_view id) const {
  for (const auto& e : entries)
    if (e.id == id) return &e;
  return nullptr;
}

bool IdentityReport::passed() const {
  return std::none_of(entries.begin(), entries.end(),
                      [](const IdentityEntry& e) { return !e.informational && e.status == Status::Fail; });
}

void IdentityReport::add_flag(std::string flag) {
  if (std::find(flags.begin(), flags.end(), flag) == flags.end()) flags.push_back(std::move(flag));
}

IdentityEntry make_entry(std::string id, const Residual& r, double tolerance, std::size_t samples,
                         bool informational) {
  return make_entry(std::move(id), r.value(), tolerance, samples, informational);
}

IdentityEntry make_entry(std::string id, double residual, double tolerance, std::size_t samples,
                         bool informational) {
  IdentityEntry e;
  e.id = std::move(id);
  e.max_residual = residual;
  e.tolerance = tolerance;
  e.samples_used = samples;
  e.informational = informational;
  e.status = residual <= tolerance ? Status::Pass : Status::Fail;
  return e;
}

IdentityEntry vacuous_entry(std::string id, double tolerance, std::string flag, double residual) {
  IdentityEntry e;
  e.id = std::move(id);
  e.tolerance = tolerance;
  e.max_residual = residual;
  e.status = Status::Vacuous;
  e.flags.push_back(std::move(flag));
  return e;
}

IdentityEntry not_applicable_entry(std::string id, double tolerance, std::string note) {
  IdentityEntry e;
  e.id = std::move(id);
  e.tolerance = tolerance;
  e.status = Status::NotApplicable;
  e.note = std::move(note);
  return e;
}

}  // namespace lpv
