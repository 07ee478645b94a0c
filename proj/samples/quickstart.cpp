// Builds the nine-infinitely-near-points surface by hand and lists its conic
// bundles of degree one.

#include <iostream>

#include "conic.hpp"

int main() {
  using namespace conic;

  ModelSpec spec;
  spec.name = "chain";
  spec.forest = BasePointForest::chain();
  for (int i = 1; i <= 9; ++i) spec.curves.push_back(CurveSpec::exceptional("E" + std::to_string(i), i));
  spec.curves.push_back(CurveSpec::plane("L", CurveKind::Line, {{1, 1}, {2, 1}, {3, 1}}));
  spec.config = parse_configuration({"II*", "II"});
  spec.fibers.push_back({"II*", KodairaType::of(KodairaFamily::IIStar),
                         {{"L", 3}, {"E1", 2}, {"E2", 4}, {"E3", 6}, {"E4", 5},
                          {"E5", 4}, {"E6", 3}, {"E7", 2}, {"E8", 1}}});

  const SurfaceModel model(spec);
  const ModelReport report = validate_model(model);
  std::cout << "valid: " << (report.ok() ? "yes" : "no") << ", rank " << *report.config.rank << "\n";

  for (const auto& bundle : enumerate_conic_bundles(model, 1)) {
    std::cout << to_string(bundle.conic.cls) << "\n";
    for (const auto& fiber : bundle.fibers) {
      std::cout << "  " << to_string(fiber.type) << ":";
      for (const auto& t : fiber.support) std::cout << " " << t.multiplicity << "*" << t.curve.label;
      std::cout << "\n";
    }
  }
}
