"""Exact minimum-norm point solver (Wolfe), hard instances, LP reductions."""
