"""File-backed persistence for bases, systems, arguments and findings."""
