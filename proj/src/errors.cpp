#include "opconvex/errors.hpp"

namespace opconvex {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::schema_error: return "SchemaError";
    case Errc::unknown_index: return "UnknownIndex";
    case Errc::arity_mismatch: return "ArityMismatch";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::family_mismatch: return "FamilyMismatch";
    case Errc::resource_limit: return "ResourceLimit";
    case Errc::not_a_chain: return "NotAChain";
    case Errc::empty_chain: return "Empty";
    case Errc::no_supremum: return "NoSupremum";
    case Errc::no_infimum: return "NoInfimum";
    case Errc::unsupported_order: return "UnsupportedOrder";
    case Errc::not_pointed: return "NotPointed";
    case Errc::not_salient: return "NotSalient";
    case Errc::not_closed: return "NotClosed";
    case Errc::not_sharp: return "NotSharp";
    case Errc::unsupported_norm: return "UnsupportedNorm";
    case Errc::hypothesis_failure: return "HypothesisFailure";
    case Errc::infeasible: return "Infeasible";
    case Errc::not_interior: return "NotInterior";
    case Errc::not_reflexive: return "NotReflexive";
    case Errc::not_subadditive: return "NotSubadditive";
    case Errc::condition_failure: return "ConditionFailure";
    case Errc::not_relative_interior: return "NotRelativeInterior";
    case Errc::not_delta_convex: return "NotDeltaConvex";
    case Errc::internal_error: return "InternalError";
    case Errc::theorem_violation: return "TheoremViolation";
  }
  return "Unknown";
}

}  // namespace opconvex
