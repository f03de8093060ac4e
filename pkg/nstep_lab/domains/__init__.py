"""Domain modules for the nstep-lab CLI."""
