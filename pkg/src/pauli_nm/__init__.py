"""Non-Markovian qubit Pauli channels: generator singularities, divisibility, measures."""
