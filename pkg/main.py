from dotenv import load_dotenv

from zakharov.cli import run

if __name__ == "__main__":
    load_dotenv()
    run()
