"""Service packages: model, cone, polyhedron, verify, dist, scenarios, cli."""
