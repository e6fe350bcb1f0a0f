#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tandev/curve.hpp"

namespace tandev {

// A curve as read from a JSON spec:
//   { "components": ["t^2", "t^3", "t^4"], "domain": [-1, 1], "dim": 3 }
//   { "builtin": "mond", "domain": [-0.5, 0.5] }
//   { "direction": ["cos(t)", "sin(t)", "t"], "conical": true }
// "dim" is optional and checked against the components. "f-lambda" takes a
// "lambda" entry (number or rational string). A "direction" spec with
// "conical": true builds the cone fixture on that direction.
struct CurveSpec {
  std::string name;
  std::vector<std::string> components;
  std::vector<std::string> direction;
  Interval domain{-1, 1};
  bool conical = false;
  std::shared_ptr<const FrontalCurve> curve;

  // Canonical JSON text of this spec (sorted keys, no curve data).
  std::string to_json() const;
};

std::vector<std::string> builtin_names();
CurveSpec builtin_curve(const std::string& name, std::optional<Interval> domain = std::nullopt,
                        const std::string& lambda = "1");

// ParseError carries 1-based line and column for malformed JSON and for
// expression errors inside a component (line of the JSON, column within the
// component string).
CurveSpec parse_curve_spec(const std::string& json_text);
CurveSpec load_curve_spec(const std::string& path);

// Same curve data on another parameter interval.
CurveSpec with_domain(CurveSpec spec, Interval domain);

}  // namespace tandev
