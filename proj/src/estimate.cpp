#include "bhd/estimate.hpp"

#include <array>
#include <utility>

#include "bhd/error.hpp"

namespace bhd {
namespace {

constexpr std::array<std::pair<Method, std::string_view>, 7> kNames{{
    {Method::exact, "exact"},
    {Method::push, "push"},
    {Method::push_plus, "push+"},
    {Method::stw, "stw"},
    {Method::swf, "swf"},
    {Method::snb, "snb"},
    {Method::snb_plus, "snb+"},
}};

}  // namespace

std::string_view method_name(Method m) {
  for (auto [method, name] : kNames)
    if (method == m) return name;
  return "?";
}

Method parse_method(std::string_view name) {
  for (auto [method, known] : kNames)
    if (known == name) return method;
  throw ParameterError("unknown method '" + std::string(name) + "'");
}

bool is_pairwise(Method m) { return m != Method::snb && m != Method::snb_plus; }

Deadline Deadline::after(double seconds) {
  return {Clock::now() + std::chrono::duration_cast<Clock::duration>(
                             std::chrono::duration<double>(seconds))};
}

void Deadline::check(std::string_view what) const {
  if (expired()) throw TimeoutError(std::string(what) + " exceeded its time budget");
}

}  // namespace bhd
