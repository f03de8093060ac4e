"""
Admin domain commands.

Exports COMMANDS dict for CLI discovery.
"""
import json
from pathlib import Path

from ...config import Config


def handle_init(args) -> None:
    """
    Initialize nstep-lab configuration.

    By default, creates global config in ~/.nstep/
    Use --project to create project-specific config in {cwd}/.nstep/

    Command: init [--project]
    """
    if getattr(args, "project", False):
        base_dir = Path.cwd() / ".nstep"
        config_type = "project"
    else:
        base_dir = Path.home() / ".nstep"
        config_type = "global"

    base_dir.mkdir(parents=True, exist_ok=True)
    env_path = base_dir / ".env"
    config_path = base_dir / "config.json"

    if env_path.exists():
        print(f".env already exists at {env_path}")
    else:
        env_template = """# nstep-lab overrides (uncomment to use)
# NSTEP_OUTPUT_DIR=./nstep-results
# NSTEP_SEED=0
# Absolute constant of the fixed-point pipeline; reports flag the built-in default
# NSTEP_C_ABS=64
"""
        env_path.write_text(env_template)
        print(f"Created .env template at {env_path}")

    if config_path.exists():
        print(f"config.json already exists at {config_path}")
    else:
        config = Config(output_dir=base_dir.parent / "nstep-results")
        config_path.write_text(json.dumps(config.to_dict(), indent=2))
        print(f"Created config.json at {config_path}")

    print(f"\nInitialized {config_type} nstep-lab config at {base_dir}")


def handle_list(args) -> None:
    """
    Print the experiment catalog as JSON.

    Command: list
    """
    # cli imports this module during discovery
    from ...cli import discover_commands

    catalog = [
        {"command": name, "help": spec.get("help", ""), "topic": spec.get("topic")}
        for name, spec in sorted(discover_commands().items())
        if name.startswith("run:")
    ]
    print(json.dumps(catalog, indent=2))


# Command registry for CLI discovery
COMMANDS = {
    "init": {
        "handler": handle_init,
        "help": "Initialize nstep-lab config (global by default, --project for cwd)",
        "args": [
            {"name": "--project", "action": "store_true", "help": "Create project-specific config in {cwd}/.nstep/"},
        ],
        "no_config": True,  # Special flag: doesn't require config
    },
    "list": {
        "handler": handle_list,
        "help": "List experiments with their topics",
        "args": [],
        "no_config": True,
    },
}
