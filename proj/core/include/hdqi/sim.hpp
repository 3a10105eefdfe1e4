#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "hdqi/anticomm.hpp"
#include "hdqi/decoder.hpp"
#include "hdqi/dense.hpp"

namespace hdqi {

enum class PilotMode { Dicke, Blockwise, GeneralMps };

// Product relations of Symp(H): kernel supports plus the exact operator sign
// of each product (the ordered product of the signed terms over a kernel
// vector is +-identity).
std::vector<Relation> relations_from_hamiltonian(const PauliHamiltonian& h,
                                                 const SymplecticCode& code);

using DecoderFactory = std::function<std::unique_ptr<Decoder>(const SymplecticCode&)>;

DecoderFactory lookup_decoder_factory(std::size_t ell);
DecoderFactory ge_decoder_factory();
DecoderFactory bp_decoder_factory(BpParams params);

// Decoder with an epsilon fraction of each weight class <= ell remapped to a
// fixed wrong answer (the zero correction), chosen uniformly per seed. The
// induced oracle is still a permutation of basis labels.
class FaultyDecoder : public Decoder {
 public:
  FaultyDecoder(std::unique_ptr<Decoder> inner, const SymplecticCode& code,
                std::size_t ell, double epsilon, uint64_t seed);
  DecodeResult decode(const BitVec& syndrome) const override;
  std::size_t syndrome_bits() const override { return inner_->syndrome_bits(); }
  std::size_t block_length() const override { return inner_->block_length(); }
  std::size_t corrupted_count() const { return corrupted_.size(); }

 private:
  std::unique_ptr<Decoder> inner_;
  std::unordered_map<BitVec, bool, BitVec::Hash> corrupted_;
};

struct FaultSpec {
  double epsilon = 0.0;
  uint64_t seed = 0;
};

struct HdqiResult {
  DensityMatrix rho;          // reduced state on register B
  DenseState state;           // full A (x) B (x) C state after the run
  std::size_t pilot_qubits = 0;
  std::size_t n = 0;
  // purification of rho when decoding is perfect: BC slice at A = 0
  DenseState purification() const;
  double a_zero_weight() const;  // probability mass on A = 0
  DensityMatrix reduced_on_C() const;
};

// Dense execution of the HDQI circuit: pilot amplitudes on register A, sign
// phases, the controlled Pauli cascade in canonical order, the coherent Bell
// transform, the syndrome-controlled XOR decoder, and the inverse transform.
HdqiResult hdqi_run(const PauliHamiltonian& h, const UniPoly& poly,
                    const DecoderFactory& make_decoder, PilotMode mode,
                    std::optional<FaultSpec> fault = std::nullopt,
                    std::size_t component_cap = 20);

// Lower-level entry: run the circuit for an explicit pilot amplitude table
// over 2^{h.m()} patterns.
HdqiResult hdqi_run_amplitudes(const PauliHamiltonian& h,
                               std::vector<double> pilot_amplitudes,
                               const Decoder& decoder);

}  // namespace hdqi
