#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qkpi/circuit.hpp"
#include "qkpi/frame.hpp"

namespace qkpi {

// One stabilizer of a rotated surface-code patch. data[k] is the qubit touched
// at CNOT step k of the 4-step schedule, -1 where the boundary truncates it.
struct SurgeryCheck {
    int ancilla = -1;
    char type = '?';  // 'X' or 'Z'
    std::array<int, 4> data{-1, -1, -1, -1};
};

// Two d x d rotated patches side by side plus the merge column between them
// (d extra data qubits, d+1 extra stabilizers). X-bar logicals run along rows
// and terminate on the seam-facing boundaries; Z-bar logicals run along
// columns, so the merged Z-type seam checks multiply to Zbar_A Zbar_B.
struct SurgeryLayout {
    int d = 0;
    std::map<std::pair<int, int>, int> qubit_of;  // (x, y) -> qubit index
    std::vector<std::pair<int, int>> coord_of;
    int qubit_count = 0;

    std::vector<int> data_a, data_b, data_extra;
    std::vector<SurgeryCheck> checks_a, checks_b, checks_merged;
    std::vector<int> new_z_checks;  // indices into checks_merged absent from A и B

    std::vector<int> zbar_a, zbar_b;  // seam-adjacent data columns (Z readout)
    std::vector<int> xbar_a, xbar_b;  // top data rows (X readout)
    int extra_top = -1;               // extra-column qubit in the top row

    std::string digest() const;
};

SurgeryLayout make_surgery_layout(int d);

enum class LogicalBasis { X, Y, Z };

struct AnnotatedCircuit {
    Circuit circuit;
    std::vector<NoiseSite> sites;                 // idle windows
    std::vector<std::vector<int>> detectors;      // measurement-index XOR sets
    std::vector<char> detector_types;             // sector of each detector
    std::vector<std::vector<int>> observables;    // index 0: the Bell observable
};

// Full instruction stream: |+> init of both patches + 1 syndrome round, d+1
// rounds over the merged layout, X-basis readout of the extra column (split),
// then the logical readout: transversal and noisy for X/Z, or the perfect
// final round + perfect Y readout shortcut.
AnnotatedCircuit build_surgery_circuit(const SurgeryLayout& layout, LogicalBasis basis);

// QASM with trailing detector/observable comment lines.
std::string emit_surgery_qasm(const AnnotatedCircuit& annotated);

}  // namespace qkpi
