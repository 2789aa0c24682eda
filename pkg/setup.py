#!/usr/bin/env python3
"""
Setup script for flatcomp - flat presheaves and completions
This script prepares a development checkout:
- Virtual environment creation
- Python dependencies installation
- Environment configuration (.env from .env.example)
"""

import os
import platform
import shutil
import subprocess
import sys
from pathlib import Path


def run_command(command, cwd=None, shell=False):
    """Execute a command and report failures"""
    try:
        if shell or platform.system() == "Windows":
            result = subprocess.run(command, shell=True, cwd=cwd, check=True, capture_output=True, text=True)
        else:
            result = subprocess.run(command.split(), cwd=cwd, check=True, capture_output=True, text=True)
        return result.stdout
    except subprocess.CalledProcessError as e:
        print(f"❌ Error running command: {command}")
        print(f"Error output: {e.stderr}")
        return None


def check_prerequisites():
    """flatcomp needs Python 3.9 or newer"""
    print("🔍 Checking prerequisites...")
    if sys.version_info < (3, 9):
        print(f"❌ Python 3.9+ required, found {platform.python_version()}")
        return False
    print(f"✅ Python: {platform.python_version()}")
    return True


def setup_python_environment():
    """Set up the virtual environment and install requirements.txt"""
    print("\n🐍 Setting up Python environment...")

    project_root = Path(__file__).parent
    venv_path = project_root / "venv"

    if not venv_path.exists():
        print("Creating virtual environment...")
        if run_command(f"{sys.executable} -m venv venv", cwd=project_root) is None:
            return False
    else:
        print("Virtual environment already exists")

    if platform.system() == "Windows":
        cmd = f"{venv_path / 'Scripts' / 'pip'} install -r requirements.txt"
    else:
        cmd = f"source {venv_path / 'bin' / 'activate'} && pip install -r requirements.txt"

    if not (project_root / "requirements.txt").exists():
        print("⚠️ requirements.txt not found, skipping Python dependencies")
        return True
    print("Installing Python dependencies...")
    if run_command(cmd, cwd=project_root, shell=True) is None:
        return False
    print("✅ Python dependencies installed")
    return True


def setup_environment_file():
    """Create .env from .env.example"""
    print("\n🔧 Setting up environment configuration...")

    project_root = Path(__file__).parent
    env_example = project_root / ".env.example"
    env_file = project_root / ".env"

    if env_example.exists() and not env_file.exists():
        shutil.copy(env_example, env_file)
        print("✅ Created .env file from .env.example")
        print("   - QC_BUDGET caps oracle enumeration")
        print("   - QC_DB_PATH is where verify runs are stored")
    elif env_file.exists():
        print("✅ .env file already exists")
    else:
        print("⚠️ .env.example not found, skipping environment setup")
    return True


def print_next_steps():
    print("\n🎉 Setup completed successfully!")
    print("\n📋 Next steps:")
    print("1. Run the tests: pytest")
    print("2. Run the acceptance sweep: python -m flatcomp verify")
    print("3. Start the API:")
    print("   • Run: python run.py")
    print("   • Or manually: uvicorn flatcomp.main:app --reload --port 8000")
    print("\n🌐 API documentation: http://localhost:8000/docs")


def main():
    print("🚀 flatcomp Setup")
    print("=" * 40)

    if not check_prerequisites():
        print("\n❌ Prerequisites check failed.")
        sys.exit(1)
    if not setup_python_environment():
        print("\n❌ Python environment setup failed.")
        sys.exit(1)
    if not setup_environment_file():
        print("\n❌ Environment setup failed.")
        sys.exit(1)
    print_next_steps()


if __name__ == "__main__":
    os.chdir(Path(__file__).parent)
    main()
