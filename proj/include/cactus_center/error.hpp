#pragma once

#include <stdexcept>
#include <string>

namespace cactus_center {

enum class Errc {
  NotConnected,
  NotACactus,
  NonpositiveEdgeLength,
  BadVertexId,
  SelfLoop,
  EmptyGraph,
  InvalidPoint,
  IndexOutOfRange,
  InvalidInstance,
  NotVertexConstrained,
  NotAnArticulation,
  NotABlockNode,
  NotAHingeNode,
  EmptySubtree,
  NotACycle,
  NotATree,
  UnmappablePoint,
  InternalInconsistency,
  InfeasibleParams,
  ParseError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotConnected: return "NotConnected";
    case Errc::NotACactus: return "NotACactus";
    case Errc::NonpositiveEdgeLength: return "NonpositiveEdgeLength";
    case Errc::BadVertexId: return "BadVertexId";
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::EmptyGraph: return "EmptyGraph";
    case Errc::InvalidPoint: return "InvalidPoint";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::InvalidInstance: return "InvalidInstance";
    case Errc::NotVertexConstrained: return "NotVertexConstrained";
    case Errc::NotAnArticulation: return "NotAnArticulation";
    case Errc::NotABlockNode: return "NotABlockNode";
    case Errc::NotAHingeNode: return "NotAHingeNode";
    case Errc::EmptySubtree: return "EmptySubtree";
    case Errc::NotACycle: return "NotACycle";
    case Errc::NotATree: return "NotATree";
    case Errc::UnmappablePoint: return "UnmappablePoint";
    case Errc::InternalInconsistency: return "InternalInconsistency";
    case Errc::InfeasibleParams: return "InfeasibleParams";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace cactus_center
